/* Copyright 2026 The geomatch Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end. Talks to the library only through geomatch_c.h.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geomatch/geomatch_c.h"

namespace {

constexpr int kUsageExit = GM_USAGE;

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;

  std::int64_t prime = 2;
  int n_max = 3;
  int precision = 5;
  std::int64_t samples = 100000;
  std::int64_t trace = 3;
  int level = 1;
  double x_max = 10000.0;
  int points = 40;
  std::string ramified;
  std::string exponents;
};

struct UsageError {
  std::string what;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat key=value file; blank lines and lines starting with # are ignored.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read config file " + path};
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError{path + ":" + std::to_string(number) + ": expected key=value"};
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError{"not an integer: '" + item + "'"};
    out.push_back(v);
  }
  return out;
}

// "2=0,3=1" -> ([2, 3], [0, 1])
void parse_exponents(const std::string& text, std::vector<std::int64_t>& primes, std::vector<int>& values) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError{"exponent entries look like p=n, got '" + item + "'"};
    const std::vector<std::int64_t> p = parse_list(item.substr(0, eq));
    const std::vector<std::int64_t> n = parse_list(item.substr(eq + 1));
    if (p.size() != 1 || n.size() != 1) throw UsageError{"bad exponent entry '" + item + "'"};
    primes.push_back(p[0]);
    values.push_back(static_cast<int>(n[0]));
  }
}

// Required options are only enforced when strict; the first pass may still
// receive them from a config file.
std::unique_ptr<CLI::App> build_app(Options& o, bool strict) {
  auto app = std::make_unique<CLI::App>("Local matching and prime geodesic counting checks", "geomatch");
  app->require_subcommand(1);
  app->fallthrough();
  app->set_version_flag("--version", std::string(gm_version()));
  app->add_option("--config", o.config_path, "key=value file; command-line flags take precedence");
  app->add_option("--seed", o.seed, "seed for sampled quantities");
  app->add_option("--out", o.out, "output file (default: stdout)");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--threads", o.threads, "worker threads (0: GEOMATCH_THREADS or hardware)");

  auto* local = app->add_subcommand("verify-local", "closed forms against the brute-force oracle");
  local->add_option("--prime", o.prime, "2, 3 or 5");
  local->add_option("--n-max", o.n_max, "largest level");
  local->add_option("--precision", o.precision, "oracle precision M");

  auto* matching = app->add_subcommand("verify-matching", "coefficient identity, split vanishing, field matching");
  matching->add_option("--n-max", o.n_max, "largest level")->default_val(6);

  auto* coverage = app->add_subcommand("coverage", "double-coset coverage by sampling");
  coverage->add_option("--prime", o.prime, "residue characteristic");
  coverage->add_option("--precision", o.precision, "sampling precision M")->default_val(3);
  coverage->add_option("--samples", o.samples, "sample count");

  auto* classes = app->add_subcommand("classes", "SL2(Z) classes of one trace");
  classes->add_option("--trace", o.trace, "trace t with |t| > 2")->required(strict);
  classes->add_option("--level", o.level, "principal level N <= 6");

  auto* spectrum = app->add_subcommand("spectrum", "dPsi, Psi and pi tables");
  spectrum->add_option("--level", o.level, "principal level N <= 6");
  spectrum->add_option("--x-max", o.x_max, "largest x");
  spectrum->add_option("--points", o.points, "grid size");

  auto* relation = app->add_subcommand("relation", "subset decomposition of Psi for a quaternion group");
  relation->add_option("--ramified", o.ramified, "comma-separated ramified primes")->required(strict);
  relation->add_option("--exponents", o.exponents, "level exponents as p=n,...");
  relation->add_option("--x-max", o.x_max, "x")->default_val(5000.0);

  app->add_subcommand("report", "all suites and tables in one document");
  return app;
}

// Long option names that were given explicitly on the command line.
std::vector<std::string> given_options(const CLI::App& app) {
  std::vector<std::string> out;
  for (const CLI::Option* opt : app.get_options())
    if (opt->count() > 0) out.push_back(opt->get_single_name());
  for (const CLI::App* sub : app.get_subcommands())
    for (const CLI::Option* opt : sub->get_options())
      if (opt->count() > 0) out.push_back(opt->get_single_name());
  return out;
}

int emit(gm_context* ctx, gm_status status, gm_report* report, const Options& o) {
  if (report) {
    if (o.out.empty()) {
      std::cout << gm_report_text(report);
    } else {
      std::ofstream file(o.out, std::ios::binary);
      file.write(gm_report_text(report), static_cast<std::streamsize>(gm_report_size(report)));
      if (!file) {
        std::cerr << "geomatch: cannot write " << o.out << "\n";
        gm_report_free(report);
        return GM_INTERNAL;
      }
    }
    gm_report_free(report);
  }
  if (status != GM_OK)
    std::cerr << "geomatch: " << gm_status_string(status) << ": " << gm_context_last_error(ctx) << "\n";
  return status;
}

int dispatch(const CLI::App& app, const Options& o) {
  std::unique_ptr<gm_context, void (*)(gm_context*)> ctx(gm_context_new(), gm_context_free);
  if (!ctx) return GM_INTERNAL;
  gm_context_set_seed(ctx.get(), o.seed);
  gm_context_set_format(ctx.get(), o.format.c_str());
  gm_context_set_threads(ctx.get(), o.threads);

  const std::string command = app.get_subcommands().front()->get_name();
  gm_report* report = nullptr;
  gm_status status = GM_USAGE;
  if (command == "verify-local") {
    status = gm_verify_local(ctx.get(), o.prime, o.n_max, o.precision, &report);
  } else if (command == "verify-matching") {
    status = gm_verify_matching(ctx.get(), o.n_max, &report);
  } else if (command == "coverage") {
    status = gm_coverage(ctx.get(), o.prime, o.precision, o.samples, &report);
  } else if (command == "classes") {
    status = gm_classes(ctx.get(), o.trace, o.level, &report);
  } else if (command == "spectrum") {
    status = gm_spectrum(ctx.get(), o.level, o.x_max, o.points, &report);
  } else if (command == "relation") {
    const std::vector<std::int64_t> ram = parse_list(o.ramified);
    std::vector<std::int64_t> primes;
    std::vector<int> values;
    parse_exponents(o.exponents, primes, values);
    status = gm_relation(ctx.get(), ram.data(), ram.size(), primes.data(), values.data(), primes.size(), o.x_max,
                         &report);
  } else if (command == "report") {
    status = gm_full_report(ctx.get(), &report);
  }
  return emit(ctx.get(), status, report, o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    Options first;
    auto app = build_app(first, false);
    try {
      app->parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app->exit(e);
      return code == 0 ? 0 : kUsageExit;
    }
    // Second pass: config entries become flags placed before the real ones,
    // skipping any option the user gave explicitly.
    std::map<std::string, std::string> config;
    if (!first.config_path.empty()) config = read_config(first.config_path);
    const std::vector<std::string> given = given_options(*app);
    const std::string command = app->get_subcommands().front()->get_name();
    std::vector<std::string> args{argv[0], command};
    for (const auto& [key, value] : config) {
      if (std::find(given.begin(), given.end(), key) != given.end()) continue;
      args.push_back("--" + key + "=" + value);
    }
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    // The subcommand name now appears twice; drop the original occurrence.
    for (std::size_t i = 2; i < args.size(); ++i)
      if (args[i] == command) {
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }

    Options merged;
    auto app2 = build_app(merged, true);
    std::vector<char*> raw;
    for (std::string& a : args) raw.push_back(a.data());
    try {
      app2->parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
      const int code = app2->exit(e);
      return code == 0 ? 0 : kUsageExit;
    }
    return dispatch(*app2, merged);
  } catch (const UsageError& e) {
    std::cerr << "geomatch: usage error: " << e.what << "\n";
    return kUsageExit;
  }
}
