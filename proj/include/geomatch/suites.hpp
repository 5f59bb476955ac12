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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geomatch/oracle.hpp"
#include "geomatch/rational.hpp"

namespace geomatch {

/// Outcome of one batch of exact checks.
struct SuiteResult {
  std::string name;
  Int checked = 0;
  Int failures = 0;
  std::vector<std::string> failure_examples;  // first kMaxExamples, with full inputs

  static constexpr std::size_t kMaxExamples = 20;

  bool pass() const { return failures == 0 && checked > 0; }
  void record(bool ok, const std::string& description);
  void merge(const SuiteResult& other);
};

/// First count primes.
std::vector<Int> first_primes(int count);

/// a + b = 1 for n <= n_max over the first prime_count primes, matched norm
/// levels, and subset sums over random ramification data.
SuiteResult coefficient_identity_suite(int n_max, int prime_count, int random_cases, std::uint64_t seed);

/// Split vanishing of the matching combination on a v(a - b) <= gap_max grid.
SuiteResult split_vanishing_suite(const std::vector<Int>& primes, int n_max, int gap_max);

/// Field matching against phi_n on a (v(alpha - 1), v(beta)) <= (grid_max, grid_max)
/// grid for both field kinds, both norm flags, plus the even-level product formula.
SuiteResult field_matching_suite(const std::vector<Int>& primes, int n_max, int grid_max);

/// Oracle against closed forms for every kind, n <= n_max, both flags, over the
/// valuation grid reachable at precision M.
SuiteResult local_oracle_suite(Int p, int n_max, int M);

/// Radical intersections for kinds M and J over both field kinds, r <= 2, n <= 3.
/// The J, unramified, r = 0 case must report that no embedding exists.
SuiteResult intersection_suite(Int p, int M);

/// Unit, quadratic-order and norm-image indices by exhaustive enumeration.
SuiteResult index_suite(Int p, int n_max);

/// Every decomposition (both field kinds for the nonsplit ones) at (p, M).
std::vector<CoverageReport> coverage_suite(Int p, int M, Int samples, std::uint64_t seed);

}  // namespace geomatch
