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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geomatch/chain_orders.hpp"
#include "geomatch/rational.hpp"

namespace geomatch {

/// Ramification set of a quaternion algebra over Q split at infinity, plus a level.
struct RamifiedLevelData {
  std::vector<Int> ram;            // sorted, distinct primes
  std::map<Int, int> exponents;    // n_p, zero when absent

  /// Sorts and validates: primes, |ram| even and >= 2, exponents >= 0.
  static RamifiedLevelData make(std::vector<Int> ram, std::map<Int, int> exponents);
  int exponent(Int p) const;
  bool is_ramified(Int p) const;
};

struct LocalEntry {
  OrderKind kind = OrderKind::kM;
  int level = 0;
};

/// Open compact subgroup described prime by prime; primes not listed carry (M, 0).
struct GroupDescriptor {
  std::string label;
  bool quaternion = false;
  std::map<Int, LocalEntry> entries;

  LocalEntry entry(Int p) const;
  /// Explicit -1 in U^n test at every listed prime.
  bool contains_minus_one() const;
  /// 1/2 when -1 lies in the group, else 1.
  Rational sign_factor() const;
  /// N when the group is Gamma(N) with N <= kMaxLevel.
  std::optional<int> principal_level() const;
};

GroupDescriptor principal_congruence_group(int N);
GroupDescriptor quaternion_group(const RamifiedLevelData& data);

struct EichlerLevelDescriptor {
  std::vector<Int> subset;  // I, a subset of ram
  Rational coefficient;     // prod_{p in I} a_p prod_{p in ram - I} b_p
  GroupDescriptor group;
};

/// All 2^|ram| descriptors, I ordered by bitmask over the sorted ram list.
std::vector<EichlerLevelDescriptor> eichler_descriptors(const RamifiedLevelData& data);
std::map<std::vector<Int>, Rational> subset_coefficients(const RamifiedLevelData& data);

/// Orbital integral at p of the entry's test function against the root of
/// X^2 - tX + 1, norm index included. Kind D on a split torus gives 0.
Rational local_factor(const LocalEntry& entry, Int t, Int p);

/// Primes dividing 2(t^2 - 4) together with the listed primes of the group.
std::vector<Int> relevant_primes(Int t, const GroupDescriptor& group);

/// Product of local factors over relevant_primes.
Rational local_product(const GroupDescriptor& group, Int t);

/// Throws unless the level-0 factor equals 1 at every prime below limit not dividing 2(t^2 - 4).
void verify_tail(Int t, Int limit);

/// c_1 * base / prod_p O(f_0); base must be dPsi of SL_2(Z) at t.
double extract_global_constant(Int t, double base);

double predict_dpsi(const GroupDescriptor& group, Int t, double global_constant);
double predict_dpsi(const GroupDescriptor& group, Int t);

struct DpsiTerm {
  std::vector<Int> subset;
  Rational coefficient;
  Rational sign_factor;
  std::string mode;          // "enumerated" or "predicted"
  double dpsi = 0.0;         // value used in the sum
  double predicted = 0.0;
  std::optional<double> enumerated;
  bool consistent = true;    // enumerated and predicted agree to 1e-9 relative
};

struct DpsiRelation {
  Int t = 0;
  double global_constant = 0.0;
  std::vector<DpsiTerm> terms;
  double lhs = 0.0;          // c_D dPsi_D(t) from the quaternion local product
  double rhs = 0.0;          // sum of coefficient * c_I * dPsi_I(t)
  Rational lhs_local;        // prod_p local_D
  Rational rhs_local;        // sum_I coefficient * prod_p local_I
  bool exact_match = false;  // lhs_local == rhs_local
  bool consistent = true;
};

DpsiRelation dpsi_relation(const RamifiedLevelData& data, Int t);

struct PsiTerm {
  std::vector<Int> subset;
  Rational coefficient;
  std::string mode;
  double psi = 0.0;
  double contribution = 0.0;  // coefficient * psi
};

struct PsiRelationReport {
  double x = 0.0;
  double psi_D = 0.0;          // sum of the contributions, in term order
  double psi_D_local = 0.0;    // same quantity via the quaternion local product
  std::vector<PsiTerm> terms;
  Rational coefficient_sum;
  double error = 0.0;          // psi_D - x
  double bound_7_10 = 0.0;     // x^(7/10)
  bool consistent = true;      // every enumerated term matched its prediction
  bool exact_match = true;     // local identity held exactly at every trace
  std::vector<DpsiRelation> traces;
};

PsiRelationReport psi_relation(const RamifiedLevelData& data, double x);

/// Text stating how the quaternion-side value is obtained.
const char* quaternion_side_note();

std::string subset_label(const std::vector<Int>& subset);

}  // namespace geomatch
