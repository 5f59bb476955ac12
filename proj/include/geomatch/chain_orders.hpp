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

#include "geomatch/padic.hpp"

namespace geomatch {

/// M = M_2(o), J = the Iwahori order (lower-left in p), D = the maximal order
/// of the division algebra.
enum class OrderKind { kM, kJ, kD };

const char* to_string(OrderKind kind);
OrderKind parse_order_kind(const std::string& text);

/// A 2x2 matrix over Q_p stored as p^(-den) * E with E over Z/p^M.
struct LocalMatrix {
  PAdicContext context;
  std::array<Int, 4> entries{};  // row-major
  int den = 0;

  static LocalMatrix identity(const PAdicContext& ctx);
  static LocalMatrix make(const PAdicContext& ctx, Int a, Int b, Int c, Int d, int den = 0);
  /// Pi = [[0, 1], [p, 0]].
  static LocalMatrix pi(const PAdicContext& ctx);

  Int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }

  /// Valuation of entry i in Q_p; a lower bound when the stored digits vanish.
  Valuation entry_valuation(int i) const;

  LocalMatrix operator*(const LocalMatrix& other) const;
  LocalMatrix operator+(const LocalMatrix& other) const;
  LocalMatrix operator-(const LocalMatrix& other) const;
  LocalMatrix scaled(Int factor) const;

  /// det as p^(-2 den) * value.
  Int det_numerator() const;
  /// Inverse of a matrix whose determinant is a unit times p^(2 den).
  LocalMatrix inverse() const;
};

/// u + w * Pi_D in the cyclic algebra over Z_p[w], with Pi_D u = sigma(u) Pi_D and
/// Pi_D^2 = p. Quadratic coordinates are (c0, c1) for c0 + c1 * w.
struct DivisionElement {
  PAdicContext context;
  UnramifiedExtension ext;
  std::array<Int, 2> u{};
  std::array<Int, 2> w{};

  static DivisionElement make(const PAdicContext& ctx, std::array<Int, 2> u,
                              std::array<Int, 2> w);
  static DivisionElement one(const PAdicContext& ctx);
  static DivisionElement uniformizer(const PAdicContext& ctx);

  DivisionElement operator-(const DivisionElement& other) const;

  /// N(u) - p N(w).
  Int reduced_norm() const;
};

/// Frobenius of the unramified quadratic extension.
std::array<Int, 2> frobenius(const UnramifiedExtension& ext, const PAdicContext& ctx,
                             std::array<Int, 2> a);
std::array<Int, 2> ext_mul(const UnramifiedExtension& ext, const PAdicContext& ctx,
                           std::array<Int, 2> a, std::array<Int, 2> b);
Int ext_norm(const UnramifiedExtension& ext, const PAdicContext& ctx, std::array<Int, 2> a);

DivisionElement division_mul(const DivisionElement& x, const DivisionElement& y);

/// x in P^n for the radical P of the order (n = 0 tests membership in the order).
bool radical_power_membership(OrderKind kind, const LocalMatrix& x, int n);
bool radical_power_membership(const DivisionElement& x, int n);

/// x in U^n = (1 + P^n) cap O^x.
bool congruence_subgroup_membership(OrderKind kind, const LocalMatrix& x, int n);
bool congruence_subgroup_membership(const DivisionElement& x, int n);

/// [O^x : U_O^n]; 1 when n = 0.
Int order_unit_index(OrderKind kind, int n, Int q);

/// The level m with det(U^n) (resp. nu_D(U^n)) = U_o^m.
int norm_image_level(OrderKind kind, int n);

/// [o^x : U_o^m].
Int base_unit_index(int m, Int q);

}  // namespace geomatch
