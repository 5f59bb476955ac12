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

#include "geomatch/suites.hpp"

#include <random>
#include <sstream>

#include "geomatch/assembly.hpp"
#include "geomatch/closed_forms.hpp"
#include "geomatch/error.hpp"
#include "geomatch/parallel.hpp"

namespace geomatch {

namespace {

Int ipow(Int p, int k) {
  Int out = 1;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

std::string describe_element(const RegularElement& x) {
  std::ostringstream os;
  os << "p=" << x.torus().context.prime() << " torus=" << to_string(x.torus().kind);
  if (x.is_split())
    os << " (a,b)=(" << x.a() << "," << x.b() << ")";
  else
    os << " (alpha,beta)=(" << x.alpha() << "," << x.beta() << ")";
  return os.str();
}

// Field elements alpha + beta theta0 with v(alpha - 1) in [0, grid] or alpha = 1,
// and v(beta) in [0, grid].
std::vector<RegularElement> field_grid(const TorusData& torus, int grid) {
  const Int p = torus.context.prime();
  std::vector<RegularElement> out;
  for (int i = 0; i <= grid + 1; ++i) {
    for (Int c : {Int{1}, p + 1}) {
      if (i == grid + 1 && c != 1) continue;
      const Int alpha = i == grid + 1 ? 1 : 1 + ipow(p, i) * c;
      for (int j = 0; j <= grid; ++j)
        for (Int d : {Int{1}, Int{-1}, p + 1}) out.push_back(RegularElement::field(torus, alpha, ipow(p, j) * d));
    }
  }
  return out;
}

// Unit split pairs with v(a - b) in [0, gap] and a ranging over the U^i layers, i <= 5.
std::vector<RegularElement> split_grid(const TorusData& torus, int gap) {
  const Int p = torus.context.prime();
  std::vector<Int> firsts;
  if (p > 2) firsts.push_back(p - 1);  // a unit outside U^1
  for (int i = 1; i <= 5; ++i)
    for (Int c : {Int{1}, p - 1}) firsts.push_back(1 + ipow(p, i) * c);
  std::vector<RegularElement> out;
  for (Int a : firsts)
    for (int k = 0; k <= gap; ++k)
      for (Int d : {Int{1}, Int{-1}, p + 1}) {
        const Int b = a + ipow(p, k) * d;
        if (b % p == 0) continue;
        out.push_back(RegularElement::split(torus, a, b));
      }
  return out;
}

}  // namespace

void SuiteResult::record(bool ok, const std::string& description) {
  ++checked;
  if (ok) return;
  ++failures;
  if (failure_examples.size() < kMaxExamples) failure_examples.push_back(description);
}

void SuiteResult::merge(const SuiteResult& other) {
  checked += other.checked;
  failures += other.failures;
  for (const std::string& s : other.failure_examples)
    if (failure_examples.size() < kMaxExamples) failure_examples.push_back(s);
}

std::vector<Int> first_primes(int count) {
  std::vector<Int> out;
  for (Int n = 2; static_cast<int>(out.size()) < count; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

SuiteResult coefficient_identity_suite(int n_max, int prime_count, int random_cases, std::uint64_t seed) {
  SuiteResult result;
  result.name = "coefficient-identity";
  const std::vector<Int> primes = first_primes(prime_count);
  for (Int q : primes)
    for (int n = 0; n <= n_max; ++n) {
      const MatchingCombination m = matching_combination(q, n);
      const std::string where = "q=" + std::to_string(q) + " n=" + std::to_string(n);
      result.record(m.coeff_f + m.coeff_g == 1, "a+b != 1 at " + where);
      const int level = norm_image_level(OrderKind::kD, n);
      result.record(norm_image_level(OrderKind::kM, m.f_level) == level &&
                        norm_image_level(OrderKind::kJ, m.g_level) == level,
                    "norm levels differ at " + where);
    }

  std::mt19937_64 rng(seed);
  for (int c = 0; c < random_cases; ++c) {
    const std::size_t size = (rng() % 2 == 0) ? 2 : 4;
    std::vector<Int> pool = primes;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Int> ram(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    std::map<Int, int> exponents;
    for (Int p : ram) exponents[p] = static_cast<int>(rng() % 6);
    exponents[pool[size]] = static_cast<int>(rng() % 6);
    const RamifiedLevelData data = RamifiedLevelData::make(ram, exponents);
    Rational sum = 0;
    const auto coeffs = subset_coefficients(data);
    for (const auto& [subset, coeff] : coeffs) sum += coeff;
    std::ostringstream os;
    os << "ram=" << subset_label(data.ram) << " subset sum=" << sum;
    result.record(sum == 1 && coeffs.size() == (std::size_t{1} << size), os.str());
  }
  return result;
}

SuiteResult split_vanishing_suite(const std::vector<Int>& primes, int n_max, int gap_max) {
  SuiteResult result;
  result.name = "split-vanishing";
  for (Int p : primes) {
    const TorusData torus = model_torus(TorusKind::kSplit, p, PAdicContext::max_precision(p));
    for (const RegularElement& x : split_grid(torus, gap_max))
      for (int n = 0; n <= n_max; ++n)
        for (bool flag : {false, true}) {
          const MatchingReport r = verify_matching(n, x, flag);
          result.record(r.equal && r.lhs == 0, describe_element(x) + " n=" + std::to_string(n) +
                                                   " norm_index=" + std::to_string(flag) +
                                                   " lhs=" + to_string(r.lhs));
        }
  }
  return result;
}

SuiteResult field_matching_suite(const std::vector<Int>& primes, int n_max, int grid_max) {
  SuiteResult result;
  result.name = "field-matching";
  for (Int p : primes)
    for (TorusKind kind : {TorusKind::kUnramified, TorusKind::kRamified}) {
      const TorusData torus = model_torus(kind, p, PAdicContext::max_precision(p));
      const Int q = p;
      for (const RegularElement& x : field_grid(torus, grid_max))
        for (int n = 0; n <= n_max; ++n) {
          for (bool flag : {false, true}) {
            const MatchingReport r = verify_matching(n, x, flag);
            result.record(r.equal, describe_element(x) + " n=" + std::to_string(n) +
                                       " norm_index=" + std::to_string(flag) + " lhs=" +
                                       to_string(r.lhs) + " rhs=" + to_string(r.rhs));
          }
          if (n % 2 != 0 || n == 0) continue;
          // The even combination collapses to (2/e) q^(2n) (1 - q^-2) 1_{U_E^(en/2)}.
          const int half = n / 2;
          const Rational expected = x.in_unit_filtration(torus.e * half)
                                        ? Rational(2, torus.e) * rational_pow(q, 2 * n) *
                                              (Rational(1) - rational_pow(q, -2))
                                        : Rational(0);
          result.record(verify_matching(n, x, false).lhs == expected,
                        describe_element(x) + " even product formula n=" + std::to_string(n));
        }
    }
  return result;
}

SuiteResult local_oracle_suite(Int p, int n_max, int M) {
  SuiteResult result;
  result.name = "local-oracle";
  if (M < n_max + PAdicContext::kGuard)
    fail(ErrorCode::kPrecisionExhausted, "precision " + std::to_string(M) + " below n_max + guard");
  struct Case {
    TestFunctionSpec spec;
    RegularElement x;
  };
  std::vector<Case> cases;
  for (TorusKind kind : {TorusKind::kSplit, TorusKind::kUnramified, TorusKind::kRamified}) {
    const TorusData torus = model_torus(kind, p, PAdicContext::max_precision(p));
    const std::vector<RegularElement> grid =
        kind == TorusKind::kSplit ? split_grid(torus, M - 1) : field_grid(torus, M - 1);
    for (const RegularElement& x : grid)
      for (int n = 0; n <= n_max; ++n)
        for (OrderKind k : {OrderKind::kM, OrderKind::kJ, OrderKind::kD}) {
          if (k == OrderKind::kD && kind == TorusKind::kSplit) continue;
          for (bool flag : {false, true}) cases.push_back({TestFunctionSpec{k, n, flag}, x});
        }
  }
  // Warm the shared enumeration caches in order before fanning out.
  for (int n = 0; n <= n_max; ++n)
    for (OrderKind k : {OrderKind::kM, OrderKind::kJ, OrderKind::kD}) enumerate_order_unit_index(k, n, p);

  const std::vector<std::string> outcome = parallel_map<std::string>(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const Rational closed = orbital(c.spec, c.x).value;
    const Rational oracle = oracle_orbital(c.spec, c.x, M).value;
    if (closed == oracle) return std::string();
    std::ostringstream os;
    os << describe_element(c.x) << " kind=" << to_string(c.spec.kind) << " n=" << c.spec.n
       << " norm_index=" << c.spec.include_norm_index << " M=" << M << " closed=" << closed
       << " oracle=" << oracle;
    return os.str();
  });
  for (const std::string& s : outcome) result.record(s.empty(), s);
  return result;
}

SuiteResult intersection_suite(Int p, int M) {
  SuiteResult result;
  result.name = "radical-intersection";
  for (TorusKind kind : {TorusKind::kUnramified, TorusKind::kRamified}) {
    const TorusData torus = model_torus(kind, p, PAdicContext::max_precision(p));
    for (OrderKind order : {OrderKind::kM, OrderKind::kJ})
      for (int r = 0; r <= 2; ++r)
        for (int n = 1; n <= 3; ++n) {
          if (n + r + 1 > M) continue;
          const IntersectionReport rep = radical_intersection_test(order, torus, r, n, M);
          std::ostringstream os;
          os << "p=" << p << " torus=" << to_string(kind) << " kind=" << to_string(order) << " r=" << r
             << " n=" << n << " M=" << M << " predicted=" << rep.predicted
             << " mismatches=" << rep.mismatches;
          const bool no_embedding_expected =
              order == OrderKind::kJ && kind == TorusKind::kUnramified && r == 0;
          if (no_embedding_expected)
            result.record(!rep.embedding_found, os.str() + " (an embedding was found but none exists)");
          else
            result.record(rep.pass(), os.str());
        }
  }
  return result;
}

SuiteResult index_suite(Int p, int n_max) {
  SuiteResult result;
  result.name = "index-enumeration";
  auto add = [&](const IndexReport& rep) {
    std::ostringstream os;
    os << rep.label << " enumerated=" << rep.enumerated << " closed=" << rep.closed_form;
    result.record(rep.pass(), os.str());
  };
  for (OrderKind kind : {OrderKind::kM, OrderKind::kJ, OrderKind::kD})
    for (int n = 0; n <= n_max; ++n) {
      add(index_enumeration_test(kind, n, p, n + 1));
      add(norm_image_test(kind, n, p));
    }
  for (int e : {1, 2})
    for (int k = 0; k <= 2; ++k)
      for (int r = 1; r <= 2; ++r) add(quad_order_index_test(k, r, e, p));
  return result;
}

std::vector<CoverageReport> coverage_suite(Int p, int M, Int samples, std::uint64_t seed) {
  std::vector<CoverageReport> out;
  out.push_back(coset_coverage_test(Decomposition::kSplitM, TorusKind::kSplit, p, M, samples, seed));
  out.push_back(coset_coverage_test(Decomposition::kSplitJ, TorusKind::kSplit, p, M, samples, seed));
  for (TorusKind kind : {TorusKind::kUnramified, TorusKind::kRamified}) {
    out.push_back(coset_coverage_test(Decomposition::kNonsplitM, kind, p, M, samples, seed));
    out.push_back(coset_coverage_test(Decomposition::kNonsplitJ, kind, p, M, samples, seed));
  }
  return out;
}

}  // namespace geomatch
