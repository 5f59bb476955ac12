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

#include "geomatch/geomatch_c.h"

#include <cmath>
#include <functional>
#include <string>

#include "geomatch/assembly.hpp"
#include "geomatch/error.hpp"
#include "geomatch/geodesics.hpp"
#include "geomatch/parallel.hpp"
#include "geomatch/report.hpp"
#include "geomatch/suites.hpp"
#include "geomatch/version.hpp"

struct gm_context {
  std::uint64_t seed = 0;
  geomatch::Format format = geomatch::Format::kJson;
  std::string last_error;
};

struct gm_report {
  std::string text;
};

namespace {

using namespace geomatch;

constexpr Int kMaxCoverageModulus = Int{1} << 16;
constexpr Int kMaxSamples = 10'000'000;
constexpr double kMaxSpectrumX = 1e8;

gm_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecisionExhausted:
      return GM_PRECISION;
    case ErrorCode::kEnumerationTooLarge:
      return GM_SIZE;
    default:
      return GM_USAGE;
  }
}

struct Usage {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Usage{what};
}

const char* format_name(Format f) { return f == Format::kJson ? "json" : "csv"; }

ReportContext make_context(const gm_context* ctx, const std::string& command) {
  ReportContext rc;
  rc.command = command;
  rc.seed = ctx->seed;
  rc.config.emplace_back("format", format_name(ctx->format));
  return rc;
}

// Runs body, which fills the report text and returns whether every check held.
gm_status run(gm_context* ctx, gm_report** out, const std::function<bool(std::string&)>& body) {
  if (!ctx || !out) return GM_USAGE;
  *out = nullptr;
  ctx->last_error.clear();
  try {
    auto* report = new gm_report;
    bool ok = false;
    try {
      ok = body(report->text);
    } catch (...) {
      delete report;
      throw;
    }
    *out = report;
    if (!ok) ctx->last_error = "one or more checks failed";
    return ok ? GM_OK : GM_VIOLATION;
  } catch (const Usage& u) {
    ctx->last_error = u.what;
    return GM_USAGE;
  } catch (const Error& e) {
    ctx->last_error = std::string(to_string(e.code())) + ": " + e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return GM_INTERNAL;
  }
}

bool all_pass(const std::vector<SuiteResult>& suites) {
  for (const SuiteResult& s : suites)
    if (!s.pass()) return false;
  return true;
}

bool all_covered(const std::vector<CoverageReport>& reports) {
  for (const CoverageReport& r : reports)
    if (r.violations != 0) return false;
  return true;
}

bool relation_holds(const PsiRelationReport& r) {
  return r.coefficient_sum == 1 && r.consistent && r.exact_match;
}

std::vector<double> geometric_grid(double x_max, int points) {
  std::vector<double> grid;
  if (points == 1) return {x_max};
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    grid.push_back(i == points - 1 ? x_max : 10.0 * std::pow(x_max / 10.0, f));
  }
  return grid;
}

std::vector<SuiteResult> matching_suites(int n_max, std::uint64_t seed) {
  return {coefficient_identity_suite(std::max(n_max, 8), 10, 20, seed),
          split_vanishing_suite({2, 3, 5}, n_max, 4), field_matching_suite({2, 3}, n_max, 4)};
}

}  // namespace

extern "C" {

const char* gm_version(void) { return kVersion; }

const char* gm_status_string(gm_status status) {
  switch (status) {
    case GM_OK:
      return "ok";
    case GM_VIOLATION:
      return "identity violation";
    case GM_PRECISION:
      return "precision exhausted";
    case GM_SIZE:
      return "enumeration too large";
    case GM_USAGE:
      return "usage error";
    case GM_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

gm_context* gm_context_new(void) { return new (std::nothrow) gm_context; }

void gm_context_free(gm_context* ctx) { delete ctx; }

gm_status gm_context_set_seed(gm_context* ctx, uint64_t seed) {
  if (!ctx) return GM_USAGE;
  ctx->seed = seed;
  return GM_OK;
}

gm_status gm_context_set_format(gm_context* ctx, const char* format) {
  if (!ctx || !format) return GM_USAGE;
  try {
    ctx->format = parse_format(format);
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return GM_USAGE;
  }
  return GM_OK;
}

gm_status gm_context_set_threads(gm_context* ctx, unsigned threads) {
  if (!ctx) return GM_USAGE;
  set_thread_count(threads);
  return GM_OK;
}

const char* gm_context_last_error(const gm_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

gm_status gm_verify_local(gm_context* ctx, int64_t p, int n_max, int precision, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(p == 2 || p == 3 || p == 5, "verify-local supports p in {2,3,5}");
    require(n_max >= 0 && n_max <= 6, "verify-local supports 0 <= n_max <= 6");
    require(precision >= 1 && precision <= PAdicContext::max_precision(p), "precision out of range");
    ReportContext rc = make_context(ctx, "verify-local");
    rc.config.emplace_back("prime", std::to_string(p));
    rc.config.emplace_back("n_max", std::to_string(n_max));
    rc.config.emplace_back("precision", std::to_string(precision));
    const std::vector<SuiteResult> suites{local_oracle_suite(p, n_max, precision)};
    text = render_suites(rc, suites, ctx->format);
    return all_pass(suites);
  });
}

gm_status gm_verify_matching(gm_context* ctx, int n_max, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(n_max >= 0 && n_max <= 8, "verify-matching supports 0 <= n_max <= 8");
    ReportContext rc = make_context(ctx, "verify-matching");
    rc.config.emplace_back("n_max", std::to_string(n_max));
    const std::vector<SuiteResult> suites = matching_suites(n_max, ctx->seed);
    text = render_suites(rc, suites, ctx->format);
    return all_pass(suites);
  });
}

gm_status gm_coverage(gm_context* ctx, int64_t p, int precision, int64_t samples, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(p >= 2 && is_prime(p), "coverage needs a prime p");
    require(precision >= 1, "precision must be positive");
    Int modulus = 1;
    for (int i = 0; i < precision && modulus <= kMaxCoverageModulus; ++i) modulus *= p;
    require(modulus <= kMaxCoverageModulus, "coverage needs p^precision <= 65536");
    require(samples >= 1 && samples <= kMaxSamples, "samples out of range");
    ReportContext rc = make_context(ctx, "coverage");
    rc.config.emplace_back("prime", std::to_string(p));
    rc.config.emplace_back("precision", std::to_string(precision));
    rc.config.emplace_back("samples", std::to_string(samples));
    const std::vector<CoverageReport> reports = coverage_suite(p, precision, samples, ctx->seed);
    text = render_coverage(rc, reports, ctx->format);
    return all_covered(reports);
  });
}

gm_status gm_classes(gm_context* ctx, int64_t t, int level, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(t < -2 || t > 2, "trace must satisfy |t| > 2");
    require(t >= -1'000'000 && t <= 1'000'000, "trace too large");
    require(level >= 1 && level <= kMaxLevel, "level must lie in 1..6");
    ReportContext rc = make_context(ctx, "classes");
    rc.config.emplace_back("trace", std::to_string(t));
    rc.config.emplace_back("level", std::to_string(level));
    const std::vector<QuadFormClass> classes = sl2_classes(t);
    text = render_classes(rc, level, classes, trace_row(level, t), ctx->format);
    return true;
  });
}

gm_status gm_spectrum(gm_context* ctx, int level, double x_max, int points, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(level >= 1 && level <= kMaxLevel, "level must lie in 1..6");
    require(std::isfinite(x_max) && x_max >= 10.0 && x_max <= kMaxSpectrumX, "x_max must lie in [10, 1e8]");
    require(points >= 1 && points <= 10'000, "points must lie in 1..10000");
    ReportContext rc = make_context(ctx, "spectrum");
    rc.config.emplace_back("level", std::to_string(level));
    rc.config.emplace_back("x_max", format_double(x_max));
    rc.config.emplace_back("points", std::to_string(points));
    text = render_spectrum(rc, pgt_report(level, geometric_grid(x_max, points)), ctx->format);
    return true;
  });
}

gm_status gm_relation(gm_context* ctx, const int64_t* ram, size_t ram_count, const int64_t* exponent_primes,
                      const int* exponent_values, size_t exponent_count, double x_max, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    require(ram != nullptr || ram_count == 0, "null ramification list");
    require((exponent_primes && exponent_values) || exponent_count == 0, "null exponent list");
    require(std::isfinite(x_max) && x_max >= 10.0 && x_max <= 1e6, "x_max must lie in [10, 1e6]");
    std::vector<Int> primes(ram, ram + ram_count);
    std::map<Int, int> exponents;
    for (size_t i = 0; i < exponent_count; ++i) {
      require(exponents.count(exponent_primes[i]) == 0, "repeated exponent prime");
      exponents[exponent_primes[i]] = exponent_values[i];
    }
    RamifiedLevelData data;
    try {
      data = RamifiedLevelData::make(primes, exponents);
    } catch (const Error& e) {
      throw Usage{e.what()};
    }
    ReportContext rc = make_context(ctx, "relation");
    rc.config.emplace_back("ramified", subset_label(data.ram));
    std::string exps;
    for (const auto& [p, n] : data.exponents) exps += (exps.empty() ? "" : ",") + std::to_string(p) + "=" + std::to_string(n);
    rc.config.emplace_back("exponents", exps);
    rc.config.emplace_back("x_max", format_double(x_max));
    const PsiRelationReport report = psi_relation(data, x_max);
    text = render_relation(rc, data, report, ctx->format);
    return relation_holds(report);
  });
}

gm_status gm_full_report(gm_context* ctx, gm_report** out) {
  return run(ctx, out, [&](std::string& text) {
    ReportContext rc = make_context(ctx, "report");
    rc.config.emplace_back("matching_n_max", "6");
    rc.config.emplace_back("oracle", "p in {2,3}, n <= 3, M = 5");
    rc.config.emplace_back("coverage", "(2,3) and (3,2), 10000 samples");
    rc.config.emplace_back("spectrum", "level 1, x_max 10000, 20 points");
    rc.config.emplace_back("relation", "ram {2,3}, exponents 0, x 5000");
    FullReport full;
    full.suites = matching_suites(6, ctx->seed);
    for (Int p : {Int{2}, Int{3}}) {
      full.suites.push_back(local_oracle_suite(p, 3, 5));
      full.suites.push_back(intersection_suite(p, 5));
      full.suites.push_back(index_suite(p, 4));
    }
    full.coverage = coverage_suite(2, 3, 10'000, ctx->seed);
    for (const CoverageReport& r : coverage_suite(3, 2, 10'000, ctx->seed)) full.coverage.push_back(r);
    full.spectrum = pgt_report(1, geometric_grid(1e4, 20));
    full.relation_data = RamifiedLevelData::make({2, 3}, {});
    full.relation = psi_relation(full.relation_data, 5000.0);
    text = render_full(rc, full, ctx->format);
    return all_pass(full.suites) && all_covered(full.coverage) && relation_holds(full.relation);
  });
}

const char* gm_report_text(const gm_report* report) { return report ? report->text.c_str() : ""; }

size_t gm_report_size(const gm_report* report) { return report ? report->text.size() : 0; }

void gm_report_free(gm_report* report) { delete report; }

}  // extern "C"
