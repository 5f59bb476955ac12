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

#include <string>

#include "geomatch/chain_orders.hpp"
#include "geomatch/padic.hpp"
#include "geomatch/rational.hpp"

namespace geomatch {

/// f_n (kind M), g_n (kind J) or phi_n (kind D).
struct TestFunctionSpec {
  OrderKind kind = OrderKind::kM;
  int n = 0;
  /// Apply the 1/[o^x : det U^n] (resp. nu_D) prefactor.
  bool include_norm_index = false;
};

enum class Normalization { kSplitUnits, kFieldUnits };

/// Exact orbital integral. Split values use Vol(o^x x o^x) = 1, field values
/// Vol(O_E^x) = 1.
struct OrbitalValue {
  Rational value;
  Normalization normalization = Normalization::kFieldUnits;
  bool include_norm_index = false;

  bool comparable(const OrbitalValue& other) const {
    return normalization == other.normalization && include_norm_index == other.include_norm_index;
  }
};

const char* to_string(Normalization normalization);

OrbitalValue orbital_split_f(int n, const RegularElement& x, bool include_norm_index = false);
OrbitalValue orbital_split_g(int n, const RegularElement& x, bool include_norm_index = false);
OrbitalValue orbital_nonsplit_f(int n, const RegularElement& x, bool include_norm_index = false);
OrbitalValue orbital_nonsplit_g(int n, const RegularElement& x, bool include_norm_index = false);
OrbitalValue orbital_division(int n, const RegularElement& x, bool include_norm_index = false);

/// Dispatches on the spec kind and the torus of x. phi_n on a split torus is
/// rejected.
OrbitalValue orbital(const TestFunctionSpec& spec, const RegularElement& x);

/// Split coordinates given as integers, evaluated at the largest precision.
OrbitalValue orbital_split_f(Int q, int n, Int a, Int b);
OrbitalValue orbital_split_g(Int q, int n, Int a, Int b);

/// f~_n = coeff_f * f_{f_level} + coeff_g * g_{g_level}.
struct MatchingCombination {
  Int q = 0;
  int n = 0;
  Rational coeff_f;
  int f_level = 0;
  Rational coeff_g;
  int g_level = 0;
};

MatchingCombination matching_combination(Int q, int n);

struct MatchingReport {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// Compares the f~_n combination with phi_n (field) or with 0 (split).
MatchingReport verify_matching(int n, const RegularElement& x, bool include_norm_index = false);

}  // namespace geomatch
