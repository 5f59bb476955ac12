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

#include <climits>
#include <cstdint>
#include <string>

#include "geomatch/error.hpp"
#include "geomatch/rational.hpp"

namespace geomatch {

bool is_prime(Int n);

// Exact valuation of a nonzero integer.
int integer_valuation(Int x, Int p);

/// Z/p^M with a guard band: valuations at or above M - guard are treated as
/// unknown, and any computation depending on them raises kPrecisionExhausted.
class PAdicContext {
 public:
  static constexpr int kGuard = 2;

  PAdicContext(Int p, int precision);

  /// Largest precision for which p^(M+1) still fits the 62-bit residue range.
  static int max_precision(Int p);

  Int prime() const { return p_; }
  Int q() const { return p_; }
  int precision() const { return precision_; }
  int guard() const { return kGuard; }
  Int modulus() const { return modulus_; }

  PAdicContext with_precision(int precision) const { return {p_, precision}; }

  Int reduce(Int x) const;
  Int add(Int a, Int b) const { return reduce(a + b); }
  Int sub(Int a, Int b) const { return reduce(a - b); }
  Int mul(Int a, Int b) const;
  Int pow(Int a, Int e) const;
  Int inverse(Int unit) const;

  bool is_unit(Int x) const { return reduce(x) % p_ != 0; }

  /// Exact valuation; raises kPrecisionExhausted if x vanishes mod p^(M - guard).
  int valuation(Int x) const;

 private:
  Int p_;
  int precision_;
  Int modulus_;
};

int valuation(Int x, const PAdicContext& ctx);

/// A valuation known either exactly or only as a lower bound (the residue
/// vanished at working precision).
struct Valuation {
  int value = 0;
  bool exact = true;

  /// v >= k, raising kPrecisionExhausted when the answer depends on lost digits.
  bool at_least(int k) const;
};

Valuation bounded_valuation(Int x, const PAdicContext& ctx);

/// Square root of a unit square modulo p^k (Tonelli-Shanks then Newton for odd
/// p, bitwise lifting for p = 2).
Int sqrt_mod_prime_power(Int u, Int p, int k);

/// The unramified quadratic extension Z_p[w], w^2 = trace*w - norm, with
/// Frobenius w -> trace - w. Fixed per prime: w^2 = nu for the least
/// non-residue nu when p is odd, and w^2 + w + 1 = 0 when p = 2.
struct UnramifiedExtension {
  Int p;
  Int trace;
  Int norm;

  static UnramifiedExtension for_prime(Int p);
};

enum class TorusKind { kSplit, kUnramified, kRamified };

const char* to_string(TorusKind kind);

/// A quadratic etale algebra E over Q_p in the coordinates alpha + beta*theta0,
/// with theta0 a root of X^2 - theta_trace*X + theta_norm and O_E = o + o*theta0.
/// In the split case theta0 = (1, 0), so alpha + beta*theta0 = (alpha + beta, alpha).
struct TorusData {
  PAdicContext context;
  TorusKind kind;
  int e;
  Int trace;
  Int norm;
  Int theta_trace;
  Int theta_norm;
  int disc_valuation;

  bool is_field() const { return kind != TorusKind::kSplit; }
};

/// E = Q_p[X]/(X^2 - tX + 1) for a hyperbolic trace t.
TorusData classify_torus(Int t, Int p, int precision = 0);

/// A model torus of the given kind with small integral theta0, for oracle
/// work that does not start from a trace.
TorusData model_torus(TorusKind kind, Int p, int precision);

class RegularElement {
 public:
  static RegularElement split(const TorusData& torus, Int a, Int b);
  static RegularElement field(const TorusData& torus, Int alpha, Int beta);

  const TorusData& torus() const { return torus_; }
  bool is_split() const { return !torus_.is_field(); }

  Int a() const { return a_; }
  Int b() const { return b_; }
  Int alpha() const { return alpha_; }
  Int beta() const { return beta_; }

  /// v(a - b), split only.
  int gap_valuation() const { return beta_valuation_; }
  /// v(beta): the largest r with x in L_r. Field only.
  int conductor() const { return beta_valuation_; }
  int beta_valuation() const { return beta_valuation_; }
  Valuation alpha_minus_one_valuation() const;
  bool is_unit() const;

  /// Membership in the principal unit group U_E^m of O_E (m >= 0), decided
  /// from the coordinate valuations; field kinds only.
  bool in_unit_filtration(int m) const;

  /// Membership in (1 + p^k L_r) cap L_r^x.
  bool in_order_congruence(int k, int r) const;

  /// Membership of the split coordinates in U_o^m x U_o^m.
  bool split_in_units(int m) const;

 private:
  RegularElement(const TorusData& torus, Int a, Int b, Int alpha, Int beta);

  TorusData torus_;
  Int a_ = 0;
  Int b_ = 0;
  Int alpha_ = 0;
  Int beta_ = 0;
  int beta_valuation_ = 0;
};

/// The root (t + sqrt(t^2 - 4))/2 of X^2 - tX + 1 in the torus coordinates.
RegularElement hyperbolic_root(const TorusData& torus);

struct QuadOrderLevel {
  int r = 0;
};

/// |L_k^x / L_{k+r}^x|.
Int quad_order_unit_index(int k, int r, int e, Int q);

}  // namespace geomatch
