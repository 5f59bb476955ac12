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

// One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "geomatch/assembly.hpp"
#include "geomatch/geodesics.hpp"
#include "geomatch/geomatch_c.h"
#include "geomatch/oracle.hpp"
#include "geomatch/suites.hpp"

using namespace geomatch;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool suites_pass(const std::vector<SuiteResult>& suites, std::string& detail) {
  bool ok = true;
  for (const SuiteResult& s : suites) {
    detail += s.name + " " + std::to_string(s.checked - s.failures) + "/" + std::to_string(s.checked) + "; ";
    if (!s.pass()) {
      ok = false;
      for (const std::string& e : s.failure_examples) detail += "[" + e + "] ";
    }
  }
  return ok;
}

Outcome coefficient_identity() {
  Outcome o;
  o.pass = suites_pass({coefficient_identity_suite(8, 10, 20, kSeed)}, o.detail);
  return o;
}

Outcome split_vanishing() {
  Outcome o;
  o.pass = suites_pass({split_vanishing_suite({2, 3, 5}, 6, 4)}, o.detail);
  return o;
}

Outcome field_matching() {
  Outcome o;
  o.pass = suites_pass({field_matching_suite({2, 3}, 6, 4)}, o.detail);
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::vector<SuiteResult> suites;
  for (Int p : {2, 3}) {
    for (int M = 3; M <= 5; ++M) suites.push_back(local_oracle_suite(p, std::min(3, M - 2), M));
    suites.push_back(intersection_suite(p, 5));
  }
  o.pass = suites_pass(suites, o.detail);
  for (auto [p, M] : {std::pair<Int, int>{2, 3}, {3, 2}}) {
    for (const CoverageReport& r : coverage_suite(p, M, 100000, kSeed)) {
      o.detail += std::string("coverage ") + to_string(r.decomposition) + "/" + to_string(r.torus_kind) +
                  " p=" + std::to_string(p) + " violations=" + std::to_string(r.violations) + "; ";
      if (r.violations != 0 || r.samples != 100000) o.pass = false;
      if (r.decomposition == Decomposition::kSplitJ && (r.sides[0] == 0 || r.sides[1] == 0)) o.pass = false;
    }
  }
  return o;
}

Outcome index_formulas() {
  Outcome o;
  o.pass = suites_pass({index_suite(2, 4), index_suite(3, 4)}, o.detail);
  return o;
}

Outcome adelic_cross_check() {
  Outcome o;
  Int checked = 0, bad = 0;
  double worst = 0.0;
  for (int N : {1, 2, 3})
    for (Int t = -20; t <= 20; ++t) {
      if (t >= -2 && t <= 2) continue;
      const double e = dpsi_enumerated(N, t);
      const double p = predict_dpsi(principal_congruence_group(N), t);
      ++checked;
      const double rel = e == 0.0 ? std::abs(p) : std::abs(p - e) / std::abs(e);
      worst = std::max(worst, rel);
      if ((e == 0.0) != (p == 0.0) || rel > 1e-9) {
        ++bad;
        o.detail += "[N=" + std::to_string(N) + " t=" + std::to_string(t) + "] ";
      }
    }
  o.pass = bad == 0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%lld traces, %lld mismatches, worst relative %.3g",
                static_cast<long long>(checked), static_cast<long long>(bad), worst);
  o.detail += buf;
  return o;
}

Outcome prime_geodesic_envelope() {
  Outcome o;
  for (double x : {1e3, 1e4}) {
    const double psi = psi_enumerated(1, x);
    const double bound = 5.0 * std::pow(x, 0.75);
    char buf[128];
    std::snprintf(buf, sizeof buf, "x=%g Psi=%.6f ratio=%.4f |Psi-x|=%.2f bound=%.2f; ", x, psi, psi / x,
                  std::abs(psi - x), bound);
    o.detail += buf;
    if (!(psi / x >= 0.8 && psi / x <= 1.2 && std::abs(psi - x) <= bound)) o.pass = false;

    double sum = 0.0;
    for (Int t : traces_up_to(x)) sum += trace_weight(t, dpsi_enumerated(1, t));
    sum *= to_double(gamma_sign_factor(1));
    if (std::abs(sum - psi) > 1e-9 * psi) {
      o.pass = false;
      o.detail += "Psi differs from its dPsi sum; ";
    }
  }
  // pi is flat between consecutive norms and steps by the primitive count at each norm.
  const std::vector<Int> traces = traces_up_to(1e4);
  for (Int t = 3; t <= traces.back(); ++t) {
    const double norm = std::pow((t + std::sqrt(static_cast<double>(t * t - 4))) / 2, 2);
    const Rational below = pi_enumerated(1, norm * (1 - 1e-10));
    const Rational above = pi_enumerated(1, norm * (1 + 1e-10));
    const Rational step = gamma_sign_factor(1) * (trace_row(1, t).primitive_classes + trace_row(1, -t).primitive_classes);
    if (above - below != step) {
      o.pass = false;
      o.detail += "pi step mismatch at t=" + std::to_string(t) + "; ";
    }
    if (t > 3) {
      const double prev = std::pow((t - 1 + std::sqrt(static_cast<double>((t - 1) * (t - 1) - 4))) / 2, 2);
      if (pi_enumerated(1, prev * (1 + 1e-10)) != below) {
        o.pass = false;
        o.detail += "pi moves between norms before t=" + std::to_string(t) + "; ";
      }
    }
  }
  return o;
}

Outcome global_relation() {
  Outcome o;
  const RamifiedLevelData data = RamifiedLevelData::make({2, 3}, {{2, 0}, {3, 0}});
  const double x = 5000.0;
  const PsiRelationReport r = psi_relation(data, x);
  double sum = 0.0;
  Rational coefficients = 0;
  bool all_matrix_found = false;
  for (const PsiTerm& term : r.terms) {
    sum += term.contribution;
    coefficients += term.coefficient;
    // I = ram is the all-matrix term.
    if (term.subset == data.ram) {
      all_matrix_found = true;
      const double direct = psi_enumerated(1, x);
      if (std::abs(term.psi - direct) > 1e-9 * direct) {
        o.pass = false;
        o.detail += "all-matrix term differs from enumeration; ";
      }
    }
  }
  if (sum != r.psi_D) o.pass = false;
  if (coefficients != 1 || r.coefficient_sum != 1) o.pass = false;
  if (!all_matrix_found || !r.consistent) o.pass = false;
  if (std::string(quaternion_side_note()).empty()) o.pass = false;

  gm_context* ctx = gm_context_new();
  const int64_t ram[] = {2, 3};
  gm_report* out = nullptr;
  if (gm_relation(ctx, ram, 2, nullptr, nullptr, 0, x, &out) != GM_OK ||
      std::string(gm_report_text(out)).find("\"quaternion_side\"") == std::string::npos) {
    o.pass = false;
    o.detail += "report lacks the quaternion-side note; ";
  }
  gm_report_free(out);
  gm_context_free(ctx);

  char buf[160];
  std::snprintf(buf, sizeof buf, "Psi_D(%g)=%.6f from %zu terms, coefficient sum %s, local route %.6f", x,
                r.psi_D, r.terms.size(), to_string(r.coefficient_sum).c_str(), r.psi_D_local);
  o.detail += buf;
  return o;
}

std::string full_report(unsigned threads, const char* format) {
  gm_context* ctx = gm_context_new();
  gm_context_set_seed(ctx, kSeed);
  gm_context_set_format(ctx, format);
  gm_context_set_threads(ctx, threads);
  gm_report* out = nullptr;
  const gm_status status = gm_full_report(ctx, &out);
  std::string text = out ? std::string(gm_report_text(out), gm_report_size(out)) : std::string();
  gm_report_free(out);
  gm_context_set_threads(ctx, 0);
  gm_context_free(ctx);
  return status == GM_OK ? text : std::string("status ") + std::to_string(status);
}

Outcome determinism() {
  Outcome o;
  for (const char* format : {"json", "csv"}) {
    const std::string a = full_report(1, format);
    const std::string b = full_report(4, format);
    o.detail += std::string(format) + " " + std::to_string(a.size()) + " bytes " + (a == b ? "identical" : "differ") + "; ";
    if (a != b || a.rfind("status ", 0) == 0) o.pass = false;
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 1.0, coefficient_identity},   {2, 5.0, split_vanishing},      {3, 10.0, field_matching},
      {4, 300.0, oracle_agreement},     {5, 60.0, index_formulas},      {6, 120.0, adelic_cross_check},
      {7, 120.0, prime_geodesic_envelope}, {8, 120.0, global_relation}, {9, 600.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
