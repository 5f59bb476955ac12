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
#include <vector>

#include "geomatch/rational.hpp"

namespace geomatch {

/// Integral binary quadratic form A X^2 + B XY + C Y^2.
struct QuadForm {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  Int discriminant() const { return b * b - 4 * a * c; }
  auto operator<=>(const QuadForm&) const = default;
};

using IntMatrix = std::array<Int, 4>;  // row-major

/// a + b sqrt(d) with rational a, b.
struct Surd {
  Rational a;
  Rational b;
  Int d = 0;

  Surd operator*(const Surd& o) const;
  Surd operator+(const Surd& o) const;
  Surd operator-(const Surd& o) const;
  bool operator==(const Surd& o) const { return a == o.a && b == o.b && d == o.d; }
  /// Galois conjugate a - b sqrt(d).
  Surd conjugate() const { return {a, -b, d}; }
  double to_double() const;
};

/// Minimal positive solution of u^2 - delta v^2 = 4; the unit is (u + v sqrt(delta))/2.
struct PellUnit {
  Int delta = 0;
  BigInt u;
  BigInt v;

  Surd unit() const;
  double log_unit() const;
};

PellUnit pell_fundamental(Int delta);

/// Same unit via the continued fraction of (s + sqrt(delta))/2, s = delta mod 2.
PellUnit pell_fundamental_continued_fraction(Int delta);

/// One SL_2(Z)-conjugacy class of trace t, via its form of discriminant t^2 - 4.
struct QuadFormClass {
  Int t = 0;
  QuadForm form;         // least reduced form of the cycle
  Int content = 1;       // gcd(A, B, C)
  IntMatrix gamma{};     // [[(t-B)/2, -C], [A, (t+B)/2]]
  IntMatrix gamma0{};    // generator of the centralizer, trace > 0
  PellUnit pell;         // for the primitive discriminant (t^2 - 4)/content^2
  Int power_index = 1;   // gamma = +-gamma0^power_index
};

/// Reduced indefinite forms of a positive non-square discriminant, imprimitive ones included.
std::vector<QuadForm> reduced_forms(Int disc);

/// The rho-neighbour of a reduced form.
QuadForm rho(const QuadForm& f);

/// Complete list of SL_2(Z)-classes of trace t, ordered by canonical form.
std::vector<QuadFormClass> sl2_classes(Int t);

IntMatrix matrix_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix matrix_pow(const IntMatrix& x, Int k);

/// Number of Gamma(N)-classes inside the SL_2(Z)-class and the exponent k with
/// x0(Gamma(N)) = x0(SL_2(Z))^k. count is 0 when gamma is not 1 mod N.
struct Splitting {
  Int count = 0;
  Int primitive_index = 1;
};

constexpr int kMaxLevel = 6;

Splitting gamma_splitting(const QuadFormClass& cls, int N);

/// 1/2 when -1 is in Gamma(N), else 1.
Rational gamma_sign_factor(int N);

struct TraceRow {
  Int t = 0;
  Int class_count = 0;      // SL_2(Z)-classes of trace t
  Int classes_in_level = 0; // Gamma(N)-classes of trace t
  Int primitive_classes = 0;
  double dpsi = 0.0;
};

/// Per-trace data; dpsi = sum count * log x0 / sqrt(|t| - 2).
TraceRow trace_row(int N, Int t);
double dpsi_enumerated(int N, Int t);

/// Traces with 2 < |t| <= sqrt(x) + 1/sqrt(x), ordered -T..-3, 3..T.
std::vector<Int> traces_up_to(double x);

/// Chebyshev weight of one trace: 2 sqrt(|t| - 2) dPsi(t) = sum count * log N(gamma0).
double trace_weight(Int t, double dpsi);

double psi_enumerated(int N, double x);
Rational pi_enumerated(int N, double x);

struct PgtRow {
  double x = 0.0;
  double psi = 0.0;
  double psi_minus_x = 0.0;
  double x_pow_7_10 = 0.0;
  double pi = 0.0;
  double li_x = 0.0;
  double pi_minus_li = 0.0;
};

struct SpectrumReport {
  int N = 1;
  std::vector<TraceRow> traces;
  std::vector<PgtRow> rows;
};

/// Trace rows up to the largest grid value and one counting row per grid point.
SpectrumReport pgt_report(int N, const std::vector<double>& grid);

double logarithmic_integral(double x);

}  // namespace geomatch
