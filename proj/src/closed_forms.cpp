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

#include "geomatch/closed_forms.hpp"

namespace geomatch {

namespace {

Rational norm_index_factor(OrderKind kind, int n, Int q, bool include) {
  if (!include) return Rational(1);
  return Rational(BigInt(1), BigInt(base_unit_index(norm_image_level(kind, n), q)));
}

// (1 - q^-2) / (1 - q^-e).
Rational field_volume_ratio(Int q, int e) {
  return (Rational(1) - rational_pow(q, -2)) / (Rational(1) - rational_pow(q, -e));
}

void require_split(const RegularElement& x) {
  if (!x.is_split()) fail(ErrorCode::kInvalidArgument, "split formula on a field torus");
}

void require_field(const RegularElement& x) {
  if (x.is_split()) fail(ErrorCode::kInvalidArgument, "field formula on a split torus");
}

void require_level(int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
}

OrbitalValue split_value(Rational v, bool include) {
  return {std::move(v), Normalization::kSplitUnits, include};
}

OrbitalValue field_value(Rational v, bool include) {
  return {std::move(v), Normalization::kFieldUnits, include};
}

TorusData widest_split(Int q) {
  return model_torus(TorusKind::kSplit, q, PAdicContext::max_precision(q));
}

}  // namespace

const char* to_string(Normalization normalization) {
  return normalization == Normalization::kSplitUnits ? "vol(o^x x o^x)=1" : "vol(O_E^x)=1";
}

OrbitalValue orbital_split_f(int n, const RegularElement& x, bool include_norm_index) {
  require_split(x);
  require_level(n);
  const Int q = x.torus().context.q();
  if (!x.split_in_units(n)) return split_value(Rational(0), include_norm_index);
  Rational c = n == 0 ? Rational(1)
                      : rational_pow(q, 3 * n - 3) * (q - 1) * (q - 1) * (q + 1);
  return split_value(c * rational_pow(q, x.gap_valuation()) *
                         norm_index_factor(OrderKind::kM, n, q, include_norm_index),
                     include_norm_index);
}

OrbitalValue orbital_split_g(int n, const RegularElement& x, bool include_norm_index) {
  require_split(x);
  require_level(n);
  const Int q = x.torus().context.q();
  if (!x.split_in_units((n + 1) / 2)) return split_value(Rational(0), include_norm_index);
  Rational c = n == 0 ? Rational(1)
                      : rational_pow(q, n + (n + 1) / 2 - 2) * (q - 1) * (q - 1);
  return split_value(2 * c * rational_pow(q, x.gap_valuation()) *
                         norm_index_factor(OrderKind::kJ, n, q, include_norm_index),
                     include_norm_index);
}

OrbitalValue orbital_nonsplit_f(int n, const RegularElement& x, bool include_norm_index) {
  require_field(x);
  require_level(n);
  const Int q = x.torus().context.q();
  const int e = x.torus().e;
  Rational sum = x.in_unit_filtration(e * n) ? 1 : 0;
  Rational ratio = field_volume_ratio(q, e);
  for (int r = 1; r <= x.conductor(); ++r) {
    if (x.in_order_congruence(n, r)) sum += rational_pow(q, r) * ratio;
  }
  Rational c = n == 0 ? Rational(1)
                      : rational_pow(q, 4 * n) * (Rational(1) - rational_pow(q, -1)) *
                            (Rational(1) - rational_pow(q, -2));
  return field_value(sum * c * norm_index_factor(OrderKind::kM, n, q, include_norm_index),
                     include_norm_index);
}

OrbitalValue orbital_nonsplit_g(int n, const RegularElement& x, bool include_norm_index) {
  require_field(x);
  require_level(n);
  const Int q = x.torus().context.q();
  const int e = x.torus().e;
  const int shift = n % 2;
  Rational sum = (e == 2 && x.in_unit_filtration(n)) ? 1 : 0;
  Rational ratio = field_volume_ratio(q, e);
  for (int r = 1; r <= x.conductor() + shift; ++r) {
    if (x.in_order_congruence((n + 1) / 2, r - shift)) sum += 2 * rational_pow(q, r) * ratio;
  }
  Rational one_minus = Rational(1) - rational_pow(q, -1);
  Rational c = n == 0 ? Rational(1) : rational_pow(q, 2 * n) * one_minus * one_minus;
  return field_value(sum * c * norm_index_factor(OrderKind::kJ, n, q, include_norm_index),
                     include_norm_index);
}

OrbitalValue orbital_division(int n, const RegularElement& x, bool include_norm_index) {
  require_field(x);
  require_level(n);
  const Int q = x.torus().context.q();
  const int e = x.torus().e;
  if (!x.in_unit_filtration((e * n + 1) / 2)) return field_value(Rational(0), include_norm_index);
  Rational c = n == 0 ? Rational(1) : rational_pow(q, 2 * n) * (Rational(1) - rational_pow(q, -2));
  return field_value(Rational(2, e) * c * norm_index_factor(OrderKind::kD, n, q, include_norm_index),
                     include_norm_index);
}

OrbitalValue orbital(const TestFunctionSpec& spec, const RegularElement& x) {
  switch (spec.kind) {
    case OrderKind::kM:
      return x.is_split() ? orbital_split_f(spec.n, x, spec.include_norm_index)
                          : orbital_nonsplit_f(spec.n, x, spec.include_norm_index);
    case OrderKind::kJ:
      return x.is_split() ? orbital_split_g(spec.n, x, spec.include_norm_index)
                          : orbital_nonsplit_g(spec.n, x, spec.include_norm_index);
    case OrderKind::kD:
      if (x.is_split()) fail(ErrorCode::kInvalidArgument, "phi_n has no split orbital integral");
      return orbital_division(spec.n, x, spec.include_norm_index);
  }
  fail(ErrorCode::kInvalidArgument, "unknown order kind");
}

OrbitalValue orbital_split_f(Int q, int n, Int a, Int b) {
  return orbital_split_f(n, RegularElement::split(widest_split(q), a, b));
}

OrbitalValue orbital_split_g(Int q, int n, Int a, Int b) {
  return orbital_split_g(n, RegularElement::split(widest_split(q), a, b));
}

MatchingCombination matching_combination(Int q, int n) {
  require_level(n);
  MatchingCombination c;
  c.q = q;
  c.n = n;
  if (n == 0) {
    c.coeff_f = 2;
    c.coeff_g = -1;
    return c;
  }
  const int m = (n + 1) / 2;
  c.f_level = m;
  c.g_level = n;
  if (n % 2 == 0) {
    c.coeff_f = Rational(2 * q, q - 1);
    c.coeff_g = Rational(-(q + 1), q - 1);
  } else {
    c.coeff_f = Rational(-2, q - 1);
    c.coeff_g = Rational(q + 1, q - 1);
  }
  return c;
}

MatchingReport verify_matching(int n, const RegularElement& x, bool include_norm_index) {
  MatchingCombination c = matching_combination(x.torus().context.q(), n);
  TestFunctionSpec f{OrderKind::kM, c.f_level, include_norm_index};
  TestFunctionSpec g{OrderKind::kJ, c.g_level, include_norm_index};
  MatchingReport report;
  report.lhs = c.coeff_f * orbital(f, x).value + c.coeff_g * orbital(g, x).value;
  report.rhs = x.is_split() ? Rational(0) : orbital_division(n, x, include_norm_index).value;
  report.equal = report.lhs == report.rhs;
  return report;
}

}  // namespace geomatch
