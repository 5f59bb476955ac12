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

#include "geomatch/chain_orders.hpp"

#include <algorithm>
#include <string>

namespace geomatch {

namespace {

Int ipow(Int p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// Minimal valuation of each entry of P^n for the two matrix orders.
std::array<int, 4> staircase(OrderKind kind, int n) {
  if (kind == OrderKind::kM) return {n, n, n, n};
  int k = n / 2;
  if (n % 2 == 0) return {k, k, k + 1, k};
  return {k + 1, k, k + 1, k + 1};
}

int ext_valuation_bound(const PAdicContext& ctx, std::array<Int, 2> a, bool& exact) {
  Valuation v0 = bounded_valuation(a[0], ctx);
  Valuation v1 = bounded_valuation(a[1], ctx);
  int v = std::min(v0.value, v1.value);
  exact = (v0.exact && v0.value == v) || (v1.exact && v1.value == v);
  return v;
}

}  // namespace

const char* to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::kM: return "M";
    case OrderKind::kJ: return "J";
    case OrderKind::kD: return "D";
  }
  return "?";
}

OrderKind parse_order_kind(const std::string& text) {
  if (text == "M") return OrderKind::kM;
  if (text == "J") return OrderKind::kJ;
  if (text == "D") return OrderKind::kD;
  fail(ErrorCode::kInvalidArgument, "unknown order kind '" + text + "'");
}

LocalMatrix LocalMatrix::identity(const PAdicContext& ctx) { return make(ctx, 1, 0, 0, 1); }

LocalMatrix LocalMatrix::make(const PAdicContext& ctx, Int a, Int b, Int c, Int d, int den) {
  return {ctx, {ctx.reduce(a), ctx.reduce(b), ctx.reduce(c), ctx.reduce(d)}, den};
}

LocalMatrix LocalMatrix::pi(const PAdicContext& ctx) { return make(ctx, 0, 1, ctx.prime(), 0); }

Valuation LocalMatrix::entry_valuation(int i) const {
  Valuation v = bounded_valuation(entries[static_cast<std::size_t>(i)], context);
  v.value -= den;
  return v;
}

LocalMatrix LocalMatrix::operator*(const LocalMatrix& o) const {
  const PAdicContext& c = context;
  const auto& x = entries;
  const auto& y = o.entries;
  return {c,
          {c.add(c.mul(x[0], y[0]), c.mul(x[1], y[2])), c.add(c.mul(x[0], y[1]), c.mul(x[1], y[3])),
           c.add(c.mul(x[2], y[0]), c.mul(x[3], y[2])), c.add(c.mul(x[2], y[1]), c.mul(x[3], y[3]))},
          den + o.den};
}

LocalMatrix LocalMatrix::operator+(const LocalMatrix& o) const {
  int d = std::max(den, o.den);
  LocalMatrix a = scaled(ipow(context.prime(), d - den));
  LocalMatrix b = o.scaled(ipow(context.prime(), d - o.den));
  LocalMatrix r{context, {}, d};
  for (std::size_t i = 0; i < 4; ++i) r.entries[i] = context.add(a.entries[i], b.entries[i]);
  return r;
}

LocalMatrix LocalMatrix::operator-(const LocalMatrix& o) const { return *this + o.scaled(-1); }

LocalMatrix LocalMatrix::scaled(Int factor) const {
  LocalMatrix r = *this;
  for (auto& e : r.entries) e = context.mul(e, context.reduce(factor));
  return r;
}

Int LocalMatrix::det_numerator() const {
  return context.sub(context.mul(entries[0], entries[3]), context.mul(entries[1], entries[2]));
}

LocalMatrix LocalMatrix::inverse() const {
  Int det = det_numerator();
  int v = context.valuation(det);
  Int unit = det;
  for (int i = 0; i < v; ++i) unit /= context.prime();
  Int inv = context.inverse(unit);
  // (p^-den E)^-1 = p^den adj(E) / det(E), det(E) = p^v * unit.
  LocalMatrix adj = make(context, entries[3], -entries[1], -entries[2], entries[0], v - den);
  return adj.scaled(inv);
}

DivisionElement DivisionElement::make(const PAdicContext& ctx, std::array<Int, 2> u,
                                      std::array<Int, 2> w) {
  return {ctx, UnramifiedExtension::for_prime(ctx.prime()),
          {ctx.reduce(u[0]), ctx.reduce(u[1])},
          {ctx.reduce(w[0]), ctx.reduce(w[1])}};
}

DivisionElement DivisionElement::one(const PAdicContext& ctx) { return make(ctx, {1, 0}, {0, 0}); }

DivisionElement DivisionElement::uniformizer(const PAdicContext& ctx) {
  return make(ctx, {0, 0}, {1, 0});
}

DivisionElement DivisionElement::operator-(const DivisionElement& o) const {
  const PAdicContext& c = context;
  return make(c, {c.sub(u[0], o.u[0]), c.sub(u[1], o.u[1])},
              {c.sub(w[0], o.w[0]), c.sub(w[1], o.w[1])});
}

Int DivisionElement::reduced_norm() const {
  return context.sub(ext_norm(ext, context, u),
                     context.mul(context.prime(), ext_norm(ext, context, w)));
}

std::array<Int, 2> frobenius(const UnramifiedExtension& ext, const PAdicContext& ctx,
                             std::array<Int, 2> a) {
  return {ctx.add(a[0], ctx.mul(ext.trace, a[1])), ctx.reduce(-a[1])};
}

std::array<Int, 2> ext_mul(const UnramifiedExtension& ext, const PAdicContext& ctx,
                           std::array<Int, 2> a, std::array<Int, 2> b) {
  // w^2 = trace * w - norm.
  Int hi = ctx.mul(a[1], b[1]);
  return {ctx.sub(ctx.mul(a[0], b[0]), ctx.mul(ext.norm, hi)),
          ctx.add(ctx.add(ctx.mul(a[0], b[1]), ctx.mul(a[1], b[0])), ctx.mul(ext.trace, hi))};
}

Int ext_norm(const UnramifiedExtension& ext, const PAdicContext& ctx, std::array<Int, 2> a) {
  return ext_mul(ext, ctx, a, frobenius(ext, ctx, a))[0];
}

DivisionElement division_mul(const DivisionElement& x, const DivisionElement& y) {
  const PAdicContext& c = x.context;
  const UnramifiedExtension& e = x.ext;
  auto add = [&](std::array<Int, 2> a, std::array<Int, 2> b) {
    return std::array<Int, 2>{c.add(a[0], b[0]), c.add(a[1], b[1])};
  };
  auto scale = [&](std::array<Int, 2> a, Int s) {
    return std::array<Int, 2>{c.mul(a[0], s), c.mul(a[1], s)};
  };
  std::array<Int, 2> u = add(ext_mul(e, c, x.u, y.u),
                             scale(ext_mul(e, c, x.w, frobenius(e, c, y.w)), c.prime()));
  std::array<Int, 2> w = add(ext_mul(e, c, x.u, y.w), ext_mul(e, c, x.w, frobenius(e, c, y.u)));
  return DivisionElement::make(c, u, w);
}

bool radical_power_membership(OrderKind kind, const LocalMatrix& x, int n) {
  if (kind == OrderKind::kD) fail(ErrorCode::kInvalidArgument, "matrix element for order D");
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative radical exponent");
  std::array<int, 4> need = staircase(kind, n);
  // Decide definite failures first so precision loss in one entry cannot mask them.
  bool undecided = false;
  for (int i = 0; i < 4; ++i) {
    Valuation v = x.entry_valuation(i);
    if (v.value >= need[static_cast<std::size_t>(i)]) continue;
    if (v.exact) return false;
    undecided = true;
  }
  if (undecided) {
    for (int i = 0; i < 4; ++i) x.entry_valuation(i).at_least(need[static_cast<std::size_t>(i)]);
  }
  return true;
}

bool radical_power_membership(const DivisionElement& x, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative radical exponent");
  bool exact_u = true;
  bool exact_w = true;
  int vu = ext_valuation_bound(x.context, x.u, exact_u);
  int vw = ext_valuation_bound(x.context, x.w, exact_w);
  bool u_ok = 2 * vu >= n;
  bool w_ok = 2 * vw + 1 >= n;
  if ((!u_ok && exact_u) || (!w_ok && exact_w)) return false;
  if (!u_ok || !w_ok) {
    fail(ErrorCode::kPrecisionExhausted, "division element membership needs more digits");
  }
  return true;
}

bool congruence_subgroup_membership(OrderKind kind, const LocalMatrix& x, int n) {
  if (!radical_power_membership(kind, x, 0)) return false;
  Int det = x.det_numerator();
  // det of an integral matrix; den only shifts by 2*den <= 0 here.
  if (x.den > 0) {
    Valuation v = bounded_valuation(det, x.context);
    if (!v.at_least(2 * x.den) || v.value != 2 * x.den) return false;
  } else if (!x.context.is_unit(det)) {
    return false;
  }
  return radical_power_membership(kind, x - LocalMatrix::identity(x.context), n);
}

bool congruence_subgroup_membership(const DivisionElement& x, int n) {
  if (!radical_power_membership(x, 0)) return false;
  if (!x.context.is_unit(x.reduced_norm())) return false;
  return radical_power_membership(x - DivisionElement::one(x.context), n);
}

Int order_unit_index(OrderKind kind, int n, Int q) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  if (n == 0) return 1;
  switch (kind) {
    case OrderKind::kM: return (q * q - q) * (q * q - 1) * ipow(q, 4 * (n - 1));
    case OrderKind::kJ: return (q - 1) * (q - 1) * ipow(q, 2 * (n - 1));
    case OrderKind::kD: return (q * q - 1) * ipow(q, 2 * (n - 1));
  }
  return 0;
}

int norm_image_level(OrderKind kind, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  return kind == OrderKind::kM ? n : (n + 1) / 2;
}

Int base_unit_index(int m, Int q) {
  if (m < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  return m == 0 ? 1 : ipow(q, m - 1) * (q - 1);
}

}  // namespace geomatch
