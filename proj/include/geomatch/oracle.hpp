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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geomatch/chain_orders.hpp"
#include "geomatch/closed_forms.hpp"
#include "geomatch/padic.hpp"

namespace geomatch {

/// Largest number of elements any exhaustive enumeration may visit.
constexpr Int kEnumerationLimit = Int{1} << 26;

/// theta -> Theta_k = [[0, -m p^-k], [p^k, s]], a root of X^2 - sX + m.
LocalMatrix base_embedding(const TorusData& torus, int k);

/// iota(E) cap O = iota(L_r) for the embedding sending theta0 to theta, decided
/// by lattice saturation.
bool is_optimal(OrderKind kind, const LocalMatrix& theta, int r);

/// Image of theta0 under an embedding in Op(L_r, O), found by searching base
/// embeddings and a bounded set of conjugators. Empty when none exists.
std::optional<LocalMatrix> find_optimal_embedding(OrderKind kind, const TorusData& torus, int r);

/// Image of theta0 in the cyclic division algebra, correct modulo p^digits.
std::optional<DivisionElement> find_division_embedding(const TorusData& torus, int digits);

/// [O^x : U^n] by exhaustive enumeration of O modulo a radical power.
Int enumerate_order_unit_index(OrderKind kind, int n, Int p);

/// [O_E^x : L_r^x] counted through the optimal embedding at level r.
Int enumerate_quad_index(OrderKind kind, const TorusData& torus, int r);

struct NormImage {
  int level = 0;        // largest m with image inside U_o^m
  bool full = false;    // image equals U_o^level at the enumeration depth
  Int index = 0;        // [o^x : image]
  Int elements = 0;
};

/// det (M, J) or reduced-norm (D) image of U^n, enumerated.
NormImage enumerate_norm_image(OrderKind kind, int n, Int p);

/// Sum over the coset skeleton with explicitly tested indicators. Requires
/// M >= n + guard.
OrbitalValue oracle_orbital(const TestFunctionSpec& spec, const RegularElement& x, int M);

enum class Decomposition { kSplitM, kSplitJ, kNonsplitM, kNonsplitJ };

const char* to_string(Decomposition d);
Decomposition parse_decomposition(const std::string& text);

struct CoverageReport {
  Decomposition decomposition = Decomposition::kSplitM;
  TorusKind torus_kind = TorusKind::kSplit;
  Int p = 0;
  int M = 0;
  Int samples = 0;
  std::uint64_t seed = 0;
  Int violations = 0;
  std::vector<std::string> examples;  // first few violating samples
  std::map<int, Int> histogram;       // coset index r -> hits
  std::array<Int, 2> sides{};         // split-J: near / far vertex side
  int identity_index = -1;
};

/// Samples g in M_2(Z/p^M) with nonzero determinant (as elements of
/// GL_2(Q_p)) and checks that each lies in exactly one double coset.
CoverageReport coset_coverage_test(Decomposition decomposition, TorusKind field_kind, Int p,
                                   int M, Int samples, std::uint64_t seed);

struct IntersectionReport {
  OrderKind kind = OrderKind::kM;
  TorusKind torus_kind = TorusKind::kUnramified;
  int r = 0;
  int n = 0;
  int M = 0;
  bool embedding_found = false;
  std::string predicted;
  Int enumerated = 0;
  Int mismatches = 0;

  bool pass() const { return embedding_found && mismatches == 0; }
};

/// Enumerates y in O_E / p^M O_E and compares iota(y) in P^n with the
/// predicted module. Requires M >= n + r + 1.
IntersectionReport radical_intersection_test(OrderKind kind, const TorusData& torus, int r, int n,
                                             int M);

struct IndexReport {
  std::string label;
  Int enumerated = 0;
  Int closed_form = 0;
  Int elements = 0;

  bool pass() const { return enumerated == closed_form; }
};

/// Enumerated [O^x : U^n] against order_unit_index. M bounds the quotient
/// precision the enumeration may use.
IndexReport index_enumeration_test(OrderKind kind, int n, Int p, int M);

/// Enumerated |L_k^x / L_{k+r}^x| against quad_order_unit_index.
IndexReport quad_order_index_test(int k, int r, int e, Int p);

/// Enumerated norm-image level against norm_image_level (the closed_form
/// field holds the level).
IndexReport norm_image_test(OrderKind kind, int n, Int p);

}  // namespace geomatch
