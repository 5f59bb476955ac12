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

#include "geomatch/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geomatch/closed_forms.hpp"
#include "geomatch/error.hpp"
#include "geomatch/geodesics.hpp"
#include "geomatch/padic.hpp"
#include "geomatch/parallel.hpp"

namespace geomatch {

namespace {

constexpr double kRelativeTolerance = 1e-9;
constexpr Int kTailCheckLimit = 50;

std::vector<Int> prime_divisors(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool close(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kRelativeTolerance * std::max(std::abs(a), std::abs(b));
}

// -1 in U^n of the local order, by explicit membership.
bool local_contains_minus_one(const LocalEntry& entry, Int p) {
  if (entry.level == 0) return true;
  const PAdicContext ctx(p, entry.level + 2);
  if (entry.kind == OrderKind::kD) {
    const DivisionElement minus_one = DivisionElement::make(ctx, {ctx.reduce(-1), 0}, {0, 0});
    return congruence_subgroup_membership(minus_one, entry.level);
  }
  const LocalMatrix minus_one = LocalMatrix::make(ctx, ctx.reduce(-1), 0, 0, ctx.reduce(-1));
  return congruence_subgroup_membership(entry.kind, minus_one, entry.level);
}

}  // namespace

RamifiedLevelData RamifiedLevelData::make(std::vector<Int> ram, std::map<Int, int> exponents) {
  std::sort(ram.begin(), ram.end());
  if (std::adjacent_find(ram.begin(), ram.end()) != ram.end())
    fail(ErrorCode::kInvalidArgument, "ramified primes must be distinct");
  for (Int p : ram)
    if (!is_prime(p)) fail(ErrorCode::kInvalidArgument, "ramified entry " + std::to_string(p) + " is not prime");
  if (ram.size() < 2 || ram.size() % 2 != 0)
    fail(ErrorCode::kInvalidArgument, "the ramification set must have even size >= 2");
  RamifiedLevelData out;
  out.ram = std::move(ram);
  for (const auto& [p, n] : exponents) {
    if (!is_prime(p)) fail(ErrorCode::kInvalidArgument, "level entry " + std::to_string(p) + " is not prime");
    if (n < 0) fail(ErrorCode::kInvalidArgument, "level exponents must be non-negative");
    if (n > 0) out.exponents[p] = n;
  }
  return out;
}

int RamifiedLevelData::exponent(Int p) const {
  const auto it = exponents.find(p);
  return it == exponents.end() ? 0 : it->second;
}

bool RamifiedLevelData::is_ramified(Int p) const {
  return std::binary_search(ram.begin(), ram.end(), p);
}

LocalEntry GroupDescriptor::entry(Int p) const {
  const auto it = entries.find(p);
  return it == entries.end() ? LocalEntry{} : it->second;
}

bool GroupDescriptor::contains_minus_one() const {
  for (const auto& [p, e] : entries)
    if (!local_contains_minus_one(e, p)) return false;
  return true;
}

Rational GroupDescriptor::sign_factor() const {
  return contains_minus_one() ? Rational(1, 2) : Rational(1);
}

std::optional<int> GroupDescriptor::principal_level() const {
  if (quaternion) return std::nullopt;
  Int N = 1;
  for (const auto& [p, e] : entries) {
    if (e.kind != OrderKind::kM) return std::nullopt;
    for (int i = 0; i < e.level; ++i) {
      N *= p;
      if (N > kMaxLevel) return std::nullopt;
    }
  }
  return static_cast<int>(N);
}

GroupDescriptor principal_congruence_group(int N) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "level must be positive");
  GroupDescriptor g;
  g.label = "Gamma(" + std::to_string(N) + ")";
  for (Int p : prime_divisors(N)) g.entries[p] = {OrderKind::kM, integer_valuation(N, p)};
  return g;
}

GroupDescriptor quaternion_group(const RamifiedLevelData& data) {
  GroupDescriptor g;
  g.label = "Gamma_D";
  g.quaternion = true;
  for (Int p : data.ram) g.entries[p] = {OrderKind::kD, data.exponent(p)};
  for (const auto& [p, n] : data.exponents)
    if (!data.is_ramified(p)) g.entries[p] = {OrderKind::kM, n};
  return g;
}

std::string subset_label(const std::vector<Int>& subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(subset[i]);
  }
  return out + "}";
}

std::vector<EichlerLevelDescriptor> eichler_descriptors(const RamifiedLevelData& data) {
  const std::size_t r = data.ram.size();
  if (r >= 20) fail(ErrorCode::kEnumerationTooLarge, "too many ramified primes");
  std::vector<MatchingCombination> matching;
  for (Int p : data.ram) matching.push_back(matching_combination(p, data.exponent(p)));

  std::vector<EichlerLevelDescriptor> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    EichlerLevelDescriptor d;
    d.coefficient = 1;
    for (std::size_t i = 0; i < r; ++i) {
      const Int p = data.ram[i];
      const MatchingCombination& m = matching[i];
      if (mask & (std::size_t{1} << i)) {
        d.subset.push_back(p);
        d.coefficient *= m.coeff_f;
        d.group.entries[p] = {OrderKind::kM, m.f_level};
      } else {
        d.coefficient *= m.coeff_g;
        d.group.entries[p] = {OrderKind::kJ, m.g_level};
      }
    }
    for (const auto& [p, n] : data.exponents)
      if (!data.is_ramified(p)) d.group.entries[p] = {OrderKind::kM, n};
    d.group.label = "Gamma(N_" + subset_label(d.subset) + ")";
    out.push_back(std::move(d));
  }
  return out;
}

std::map<std::vector<Int>, Rational> subset_coefficients(const RamifiedLevelData& data) {
  std::map<std::vector<Int>, Rational> out;
  for (const EichlerLevelDescriptor& d : eichler_descriptors(data)) out[d.subset] = d.coefficient;
  return out;
}

Rational local_factor(const LocalEntry& entry, Int t, Int p) {
  const TorusData torus = classify_torus(t, p);
  if (entry.kind == OrderKind::kD && !torus.is_field()) return Rational(0);
  const RegularElement x = hyperbolic_root(torus);
  return orbital(TestFunctionSpec{entry.kind, entry.level, true}, x).value;
}

std::vector<Int> relevant_primes(Int t, const GroupDescriptor& group) {
  if (t >= -2 && t <= 2) fail(ErrorCode::kNonHyperbolicTrace, "trace must satisfy |t| > 2");
  std::vector<Int> out = prime_divisors(2 * (t * t - 4));
  for (const auto& [p, e] : group.entries) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational local_product(const GroupDescriptor& group, Int t) {
  Rational out = 1;
  for (Int p : relevant_primes(t, group)) {
    out *= local_factor(group.entry(p), t, p);
    if (out == 0) break;
  }
  return out;
}

void verify_tail(Int t, Int limit) {
  const Int d = t * t - 4;
  for (Int p = 3; p < limit; ++p) {
    if (!is_prime(p) || d % p == 0) continue;
    if (local_factor(LocalEntry{}, t, p) != 1)
      fail(ErrorCode::kInvalidArgument, "level-0 factor differs from 1 at p=" + std::to_string(p));
  }
}

double extract_global_constant(Int t, double base) {
  if (!(base > 0.0)) fail(ErrorCode::kInvalidArgument, "base dPsi must be positive");
  verify_tail(t, kTailCheckLimit);
  const GroupDescriptor full = principal_congruence_group(1);
  const Rational product = local_product(full, t);
  if (product == 0) fail(ErrorCode::kInvalidArgument, "level-0 local product vanished");
  return to_double(full.sign_factor()) * base / to_double(product);
}

double predict_dpsi(const GroupDescriptor& group, Int t, double global_constant) {
  const Rational product = local_product(group, t);
  return global_constant * to_double(product / group.sign_factor());
}

double predict_dpsi(const GroupDescriptor& group, Int t) {
  return predict_dpsi(group, t, extract_global_constant(t, dpsi_enumerated(1, t)));
}

DpsiRelation dpsi_relation(const RamifiedLevelData& data, Int t) {
  DpsiRelation out;
  out.t = t;
  out.global_constant = extract_global_constant(t, dpsi_enumerated(1, t));

  const GroupDescriptor quat = quaternion_group(data);
  out.lhs_local = local_product(quat, t);
  out.lhs = out.global_constant * to_double(out.lhs_local);

  out.rhs_local = 0;
  for (const EichlerLevelDescriptor& d : eichler_descriptors(data)) {
    DpsiTerm term;
    term.subset = d.subset;
    term.coefficient = d.coefficient;
    term.sign_factor = d.group.sign_factor();
    const Rational product = local_product(d.group, t);
    out.rhs_local += d.coefficient * product;
    term.predicted = out.global_constant * to_double(product / term.sign_factor);
    term.dpsi = term.predicted;
    term.mode = "predicted";
    if (const std::optional<int> N = d.group.principal_level()) {
      term.enumerated = dpsi_enumerated(*N, t);
      term.dpsi = *term.enumerated;
      term.mode = "enumerated";
      term.consistent = close(*term.enumerated, term.predicted);
      out.consistent = out.consistent && term.consistent;
    }
    out.rhs += to_double(d.coefficient * term.sign_factor) * term.dpsi;
    out.terms.push_back(std::move(term));
  }
  out.exact_match = out.lhs_local == out.rhs_local;
  return out;
}

PsiRelationReport psi_relation(const RamifiedLevelData& data, double x) {
  if (!(x >= 10.0)) fail(ErrorCode::kInvalidArgument, "x must be at least 10");
  PsiRelationReport report;
  report.x = x;
  const std::vector<Int> traces = traces_up_to(x);
  report.traces = parallel_map<DpsiRelation>(traces.size(), [&](std::size_t i) {
    return dpsi_relation(data, traces[i]);
  });

  const std::vector<EichlerLevelDescriptor> descriptors = eichler_descriptors(data);
  report.coefficient_sum = 0;
  for (std::size_t k = 0; k < descriptors.size(); ++k) {
    PsiTerm term;
    term.subset = descriptors[k].subset;
    term.coefficient = descriptors[k].coefficient;
    report.coefficient_sum += term.coefficient;
    const double c = to_double(descriptors[k].group.sign_factor());
    double sum = 0.0;
    for (const DpsiRelation& rel : report.traces) {
      term.mode = rel.terms[k].mode;
      sum += trace_weight(rel.t, rel.terms[k].dpsi);
    }
    if (term.mode.empty()) term.mode = descriptors[k].group.principal_level() ? "enumerated" : "predicted";
    term.psi = c * sum;
    term.contribution = to_double(term.coefficient) * term.psi;
    report.terms.push_back(std::move(term));
  }
  for (const PsiTerm& term : report.terms) report.psi_D += term.contribution;
  for (const DpsiRelation& rel : report.traces) {
    report.psi_D_local += trace_weight(rel.t, rel.lhs);
    report.consistent = report.consistent && rel.consistent;
    report.exact_match = report.exact_match && rel.exact_match;
  }
  report.error = report.psi_D - x;
  report.bound_7_10 = std::pow(x, 0.7);
  return report;
}

const char* quaternion_side_note() {
  return "quaternion-side psi is defined through the subset decomposition of matrix-side "
         "congruence subgroups; no quaternion geodesics are enumerated";
}

}  // namespace geomatch
