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

#include "geomatch/padic.hpp"

#include <cstdlib>
#include <string>

namespace geomatch {

namespace {

using u128 = unsigned __int128;

constexpr Int kResidueLimit = Int{1} << 62;

Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<u128>(a) * static_cast<u128>(b) %
                          static_cast<u128>(m));
}

Int powmod(Int a, Int e, Int m) {
  Int result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

Int inverse_mod(Int a, Int m) {
  __int128 r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 quot = r0 / r1;
    __int128 tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - quot * s1;
    s0 = s1;
    s1 = tmp;
  }
  Int r = static_cast<Int>(s0 % m);
  return r < 0 ? r + m : r;
}

Int ipow(Int p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

Int smallest_nonresidue(Int p) {
  for (Int a = 2; a < p; ++a) {
    if (powmod(a, (p - 1) / 2, p) == p - 1) return a;
  }
  fail(ErrorCode::kInvalidArgument, "no quadratic non-residue modulo " + std::to_string(p));
}

bool is_unit_square(Int u, Int p) {
  if (p == 2) {
    // Exhaustive search in Z/32.
    Int r = ((u % 32) + 32) % 32;
    for (Int s = 1; s < 32; s += 2) {
      if (s * s % 32 == r) return true;
    }
    return false;
  }
  Int r = ((u % p) + p) % p;
  return powmod(r, (p - 1) / 2, p) == 1;
}

Int tonelli_shanks(Int a, Int p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  Int q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = smallest_nonresidue(p);
  Int m = s;
  Int c = powmod(z, q, p);
  Int t = powmod(a, q, p);
  Int r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kPrecisionExhausted: return "precision-exhausted";
    case ErrorCode::kEnumerationTooLarge: return "enumeration-too-large";
    case ErrorCode::kNonHyperbolicTrace: return "non-hyperbolic-trace";
    case ErrorCode::kRegularityViolated: return "regularity-violated";
    case ErrorCode::kSquareDiscriminant: return "square-discriminant";
    case ErrorCode::kLevelTooLarge: return "level-too-large";
  }
  return "unknown";
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int integer_valuation(Int x, Int p) {
  if (x == 0) fail(ErrorCode::kInvalidArgument, "valuation of zero");
  int k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

PAdicContext::PAdicContext(Int p, int precision) : p_(p), precision_(precision) {
  if (!is_prime(p)) fail(ErrorCode::kInvalidArgument, std::to_string(p) + " is not prime");
  if (precision < 1) fail(ErrorCode::kInvalidArgument, "precision must be at least 1");
  if (precision > max_precision(p) + 1) {
    fail(ErrorCode::kPrecisionExhausted,
         "precision " + std::to_string(precision) + " exceeds the residue range for p=" +
             std::to_string(p));
  }
  modulus_ = ipow(p, precision);
}

int PAdicContext::max_precision(Int p) {
  // p^(M+1) < 2^62 leaves room for one extra digit when halving at p = 2.
  int m = 0;
  Int power = p;
  while (power < kResidueLimit / p) {
    power *= p;
    ++m;
  }
  return m;
}

Int PAdicContext::reduce(Int x) const {
  Int r = x % modulus_;
  return r < 0 ? r + modulus_ : r;
}

Int PAdicContext::mul(Int a, Int b) const { return mulmod(reduce(a), reduce(b), modulus_); }

Int PAdicContext::pow(Int a, Int e) const { return powmod(reduce(a), e, modulus_); }

Int PAdicContext::inverse(Int unit) const {
  Int a = reduce(unit);
  if (a % p_ == 0) fail(ErrorCode::kInvalidArgument, "inverse of a non-unit");
  return inverse_mod(a, modulus_);
}

int PAdicContext::valuation(Int x) const {
  Valuation v = bounded_valuation(x, *this);
  if (!v.exact) {
    fail(ErrorCode::kPrecisionExhausted,
         "element vanishes modulo p^" + std::to_string(precision_ - kGuard) + " (p=" +
             std::to_string(p_) + ", M=" + std::to_string(precision_) + ")");
  }
  return v.value;
}

int valuation(Int x, const PAdicContext& ctx) { return ctx.valuation(x); }

Valuation bounded_valuation(Int x, const PAdicContext& ctx) {
  Int r = ctx.reduce(x);
  int limit = ctx.precision() - ctx.guard();
  int k = 0;
  while (k < limit && r % ctx.prime() == 0) {
    r /= ctx.prime();
    ++k;
  }
  return {k, k < limit};
}

bool Valuation::at_least(int k) const {
  if (value >= k) return true;
  if (exact) return false;
  fail(ErrorCode::kPrecisionExhausted,
       "valuation bound " + std::to_string(value) + " cannot decide v >= " + std::to_string(k));
}

Int sqrt_mod_prime_power(Int u, Int p, int k) {
  Int mod = ipow(p, k);
  Int a = ((u % mod) + mod) % mod;
  if (p == 2) {
    if (k >= 3 && a % 8 != 1) {
      fail(ErrorCode::kInvalidArgument, "unit is not a 2-adic square");
    }
    Int s = 1;
    for (int j = 3; j < k; ++j) {
      Int step = Int{1} << (j + 1);
      Int diff = mulmod(s, s, step) - a % step;
      if (diff != 0) s += Int{1} << (j - 1);
    }
    return s % mod;
  }
  if (!is_unit_square(a, p)) fail(ErrorCode::kInvalidArgument, "unit is not a p-adic square");
  Int s = tonelli_shanks(a % p, p);
  // Newton iteration doubles the number of correct digits per step.
  for (int done = 1; done < k; done *= 2) {
    Int inv = inverse_mod(mulmod(2, s, mod), mod);
    Int num = (mulmod(s, s, mod) - a + mod) % mod;
    s = (s - mulmod(num, inv, mod) + mod) % mod;
  }
  return s;
}

UnramifiedExtension UnramifiedExtension::for_prime(Int p) {
  if (p == 2) return {2, -1, 1};
  return {p, 0, -smallest_nonresidue(p)};
}

const char* to_string(TorusKind kind) {
  switch (kind) {
    case TorusKind::kSplit: return "split";
    case TorusKind::kUnramified: return "unramified-field";
    case TorusKind::kRamified: return "ramified-field";
  }
  return "unknown";
}

namespace {

struct RootData {
  Int alpha;
  Int beta;
  Int a;
  Int b;
};

// Halves an even residue known modulo p^(M+1), giving a residue modulo p^M.
Int halve(Int x, const PAdicContext& wide, const PAdicContext& ctx) {
  Int r = wide.reduce(x);
  if (r % 2 != 0) fail(ErrorCode::kInvalidArgument, "halving an odd 2-adic residue");
  return ctx.reduce(r / 2);
}

}  // namespace

TorusData classify_torus(Int t, Int p, int precision) {
  if (t >= -2 && t <= 2) {
    fail(ErrorCode::kNonHyperbolicTrace, "trace " + std::to_string(t) + " is not hyperbolic");
  }
  if (t > 3000000000LL || t < -3000000000LL) {
    fail(ErrorCode::kInvalidArgument, "trace out of supported range");
  }
  if (precision == 0) precision = PAdicContext::max_precision(p);
  PAdicContext ctx(p, precision);
  Int d = t * t - 4;
  int v = integer_valuation(d, p);
  if (v >= precision - ctx.guard()) {
    fail(ErrorCode::kPrecisionExhausted,
         "discriminant valuation " + std::to_string(v) + " needs precision above " +
             std::to_string(precision));
  }
  Int u = d;
  for (int i = 0; i < v; ++i) u /= p;

  TorusData torus{ctx, TorusKind::kSplit, 1, t, 1, 1, 0, v};
  if (v % 2 == 1) {
    torus.kind = TorusKind::kRamified;
    torus.e = 2;
    torus.theta_trace = 0;
    torus.theta_norm = ctx.reduce(-ctx.mul(p, u));
    return torus;
  }
  if (is_unit_square(u, p)) return torus;
  if (p == 2 && ((u % 4) + 4) % 4 == 3) {
    torus.kind = TorusKind::kRamified;
    torus.e = 2;
    torus.theta_trace = -2;
    torus.theta_norm = ctx.reduce(1 - u);
    return torus;
  }
  UnramifiedExtension ext = UnramifiedExtension::for_prime(p);
  torus.kind = TorusKind::kUnramified;
  torus.theta_trace = ext.trace;
  torus.theta_norm = ctx.reduce(ext.norm);
  return torus;
}

TorusData model_torus(TorusKind kind, Int p, int precision) {
  PAdicContext ctx(p, precision);
  switch (kind) {
    case TorusKind::kSplit:
      return {ctx, kind, 1, 0, 0, 1, 0, 0};
    case TorusKind::kUnramified: {
      UnramifiedExtension ext = UnramifiedExtension::for_prime(p);
      return {ctx, kind, 1, 0, 0, ext.trace, ctx.reduce(ext.norm), 0};
    }
    case TorusKind::kRamified:
      return {ctx, kind, 2, 0, 0, 0, ctx.reduce(-p), 1};
  }
  fail(ErrorCode::kInvalidArgument, "unknown torus kind");
}

RegularElement::RegularElement(const TorusData& torus, Int a, Int b, Int alpha, Int beta)
    : torus_(torus), a_(a), b_(b), alpha_(alpha), beta_(beta) {
  const PAdicContext& ctx = torus_.context;
  if (ctx.reduce(beta_) == 0) {
    fail(ErrorCode::kRegularityViolated, "element lies in the base field at working precision");
  }
  beta_valuation_ = ctx.valuation(beta_);
}

RegularElement RegularElement::split(const TorusData& torus, Int a, Int b) {
  if (torus.is_field()) fail(ErrorCode::kInvalidArgument, "split coordinates on a field torus");
  const PAdicContext& ctx = torus.context;
  if (!ctx.is_unit(a) || !ctx.is_unit(b)) {
    fail(ErrorCode::kInvalidArgument, "split coordinates must be units");
  }
  return RegularElement(torus, ctx.reduce(a), ctx.reduce(b), ctx.reduce(b), ctx.sub(a, b));
}

RegularElement RegularElement::field(const TorusData& torus, Int alpha, Int beta) {
  if (!torus.is_field()) fail(ErrorCode::kInvalidArgument, "field coordinates on a split torus");
  const PAdicContext& ctx = torus.context;
  return RegularElement(torus, 0, 0, ctx.reduce(alpha), ctx.reduce(beta));
}

Valuation RegularElement::alpha_minus_one_valuation() const {
  return bounded_valuation(alpha_ - 1, torus_.context);
}

bool RegularElement::is_unit() const {
  const PAdicContext& ctx = torus_.context;
  if (is_split()) return ctx.is_unit(a_) && ctx.is_unit(b_);
  Int norm = ctx.add(ctx.add(ctx.mul(alpha_, alpha_), ctx.mul(ctx.mul(alpha_, beta_), torus_.theta_trace)),
                     ctx.mul(ctx.mul(beta_, beta_), torus_.theta_norm));
  return ctx.is_unit(norm);
}

bool RegularElement::in_unit_filtration(int m) const {
  if (is_split()) fail(ErrorCode::kInvalidArgument, "unit filtration of a split torus");
  if (m == 0) return is_unit();
  Valuation va = alpha_minus_one_valuation();
  if (torus_.e == 1) return beta_valuation_ >= m && va.at_least(m);
  int j = m / 2;
  if (m % 2 == 0) return beta_valuation_ >= j && va.at_least(j);
  return beta_valuation_ >= j && va.at_least(j + 1);
}

bool RegularElement::in_order_congruence(int k, int r) const {
  if (is_split()) fail(ErrorCode::kInvalidArgument, "order congruence of a split torus");
  if (beta_valuation_ < k + r) return false;
  if (k == 0) return is_unit();
  return alpha_minus_one_valuation().at_least(k);
}

bool RegularElement::split_in_units(int m) const {
  if (!is_split()) fail(ErrorCode::kInvalidArgument, "split units of a field torus");
  const PAdicContext& ctx = torus_.context;
  if (m == 0) return ctx.is_unit(a_) && ctx.is_unit(b_);
  return bounded_valuation(a_ - 1, ctx).at_least(m) && bounded_valuation(b_ - 1, ctx).at_least(m);
}

RegularElement hyperbolic_root(const TorusData& torus) {
  const PAdicContext& ctx = torus.context;
  const Int p = ctx.prime();
  const Int t = torus.trace;
  const int v = torus.disc_valuation;
  const int k = v / 2;
  Int d = t * t - 4;
  Int u = d;
  for (int i = 0; i < v; ++i) u /= p;
  const int m = ctx.precision();

  if (p != 2) {
    Int inv2 = ctx.inverse(2);
    Int pk = ctx.pow(p, k);
    switch (torus.kind) {
      case TorusKind::kSplit: {
        Int sd = ctx.mul(pk, sqrt_mod_prime_power(u, p, m));
        return RegularElement::split(torus, ctx.mul(t + sd, inv2), ctx.mul(t - sd, inv2));
      }
      case TorusKind::kUnramified: {
        UnramifiedExtension ext = UnramifiedExtension::for_prime(p);
        Int nu = ctx.reduce(-ext.norm);
        Int s = sqrt_mod_prime_power(ctx.mul(u, ctx.inverse(nu)), p, m);
        return RegularElement::field(torus, ctx.mul(t, inv2), ctx.mul(ctx.mul(pk, s), inv2));
      }
      case TorusKind::kRamified:
        return RegularElement::field(torus, ctx.mul(t, inv2), ctx.mul(pk, inv2));
    }
  }

  PAdicContext wide = ctx.with_precision(m + 1);
  Int pk = wide.pow(2, k);
  if (v % 2 == 1) {
    // theta0^2 = 2u, sqrt(d) = 2^k theta0 with k >= 2.
    return RegularElement::field(torus, halve(t, wide, ctx), ctx.pow(2, k - 1));
  }
  switch (torus.kind) {
    case TorusKind::kSplit: {
      Int sd = wide.mul(pk, sqrt_mod_prime_power(u, 2, m + 1));
      return RegularElement::split(torus, halve(t + sd, wide, ctx), halve(t - sd, wide, ctx));
    }
    case TorusKind::kUnramified: {
      // sqrt(u) = (2w + 1) s with s^2 = -u/3.
      Int s = sqrt_mod_prime_power(wide.mul(-u, wide.inverse(3)), 2, m + 1);
      Int ks = wide.mul(pk, s);
      return RegularElement::field(torus, halve(t + ks, wide, ctx), ctx.reduce(ks));
    }
    case TorusKind::kRamified:
      // theta0 = sqrt(u) - 1, so sqrt(d) = 2^k (theta0 + 1) with k >= 1.
      return RegularElement::field(torus, halve(t + pk, wide, ctx), ctx.pow(2, k - 1));
  }
  fail(ErrorCode::kInvalidArgument, "unknown torus kind");
}

Int quad_order_unit_index(int k, int r, int e, Int q) {
  if (k < 0 || r < 1 || (e != 1 && e != 2)) {
    fail(ErrorCode::kInvalidArgument, "quad_order_unit_index needs k >= 0, r >= 1, e in {1,2}");
  }
  Int base = ipow(q, r - 1);
  if (k == 0 && e == 1) return base * (q + 1);
  return base * q;
}

}  // namespace geomatch
