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

#include <random>

#include "doctest.h"
#include "geomatch/chain_orders.hpp"
#include "geomatch/error.hpp"

using namespace geomatch;

namespace {

LocalMatrix random_matrix(std::mt19937_64& rng, const PAdicContext& ctx) {
  auto r = [&] { return static_cast<Int>(rng() % static_cast<std::uint64_t>(ctx.modulus())); };
  return LocalMatrix::make(ctx, r(), r(), r(), r());
}

DivisionElement random_division(std::mt19937_64& rng, const PAdicContext& ctx) {
  auto r = [&] { return static_cast<Int>(rng() % static_cast<std::uint64_t>(ctx.modulus())); };
  return DivisionElement::make(ctx, {r(), r()}, {r(), r()});
}

// An element of P^n of the given kind: Pi^n (resp. p^n) times a random order element.
LocalMatrix random_radical(std::mt19937_64& rng, OrderKind kind, const PAdicContext& ctx, int n) {
  LocalMatrix x = random_matrix(rng, ctx);
  if (kind == OrderKind::kJ) x.entries[2] = ctx.mul(x.entries[2], ctx.prime());
  LocalMatrix step = kind == OrderKind::kM ? LocalMatrix::make(ctx, ctx.prime(), 0, 0, ctx.prime())
                                           : LocalMatrix::pi(ctx);
  for (int i = 0; i < n; ++i) x = step * x;
  return x;
}

}  // namespace

TEST_CASE("radical membership examples") {
  const PAdicContext ctx(3, 8);
  const LocalMatrix pi = LocalMatrix::pi(ctx);
  CHECK(radical_power_membership(OrderKind::kJ, pi, 1));
  const LocalMatrix pi2 = pi * pi;
  CHECK(pi2[0] == 3);
  CHECK(pi2[1] == 0);
  CHECK(pi2[2] == 0);
  CHECK(pi2[3] == 3);
  CHECK(radical_power_membership(OrderKind::kJ, pi2, 2));
  CHECK_FALSE(radical_power_membership(OrderKind::kJ, pi2, 3));
  CHECK_FALSE(radical_power_membership(DivisionElement::one(ctx), 1));
  CHECK(radical_power_membership(DivisionElement::uniformizer(ctx), 1));
  CHECK_FALSE(radical_power_membership(DivisionElement::uniformizer(ctx), 2));
}

TEST_CASE("congruence subgroup examples") {
  const PAdicContext ctx(3, 8);
  for (int n = 0; n <= 5; ++n) CHECK(congruence_subgroup_membership(OrderKind::kM, LocalMatrix::identity(ctx), n));
  CHECK(congruence_subgroup_membership(OrderKind::kM, LocalMatrix::make(ctx, 1, 3, 0, 1), 1));
  CHECK_FALSE(congruence_subgroup_membership(OrderKind::kM, LocalMatrix::make(ctx, 1, 3, 0, 1), 2));
  const DivisionElement x = DivisionElement::make(ctx, {1, 0}, {1, 0});
  CHECK(congruence_subgroup_membership(x, 1));
  CHECK_FALSE(congruence_subgroup_membership(x, 2));
  // Lower-left entry must vanish mod p for J.
  CHECK_FALSE(congruence_subgroup_membership(OrderKind::kJ, LocalMatrix::make(ctx, 1, 0, 1, 1), 0));
  CHECK(congruence_subgroup_membership(OrderKind::kJ, LocalMatrix::make(ctx, 1, 0, 3, 1), 1));
}

TEST_CASE("unit index examples") {
  CHECK(order_unit_index(OrderKind::kM, 1, 2) == 6);
  CHECK(order_unit_index(OrderKind::kJ, 2, 3) == 36);
  CHECK(order_unit_index(OrderKind::kD, 1, 2) == 3);
  CHECK(order_unit_index(OrderKind::kM, 0, 5) == 1);
  for (Int q : {2, 3, 5})
    for (int n = 1; n <= 5; ++n) {
      Int q2n = 1;
      for (int i = 0; i < 2 * n; ++i) q2n *= q;
      CHECK(order_unit_index(OrderKind::kD, n, q) * q * q == q2n * (q * q - 1));
    }
}

TEST_CASE("norm image level examples") {
  CHECK(norm_image_level(OrderKind::kM, 2) == 2);
  CHECK(norm_image_level(OrderKind::kJ, 3) == 2);
  CHECK(norm_image_level(OrderKind::kD, 4) == 2);
}

TEST_CASE("division algebra relations") {
  for (Int p : {2, 3, 5}) {
    const PAdicContext ctx(p, 6);
    const DivisionElement pd = DivisionElement::uniformizer(ctx);
    const DivisionElement u = DivisionElement::make(ctx, {2, 1}, {0, 0});
    const DivisionElement left = division_mul(pd, u);
    const std::array<Int, 2> su = frobenius(u.ext, ctx, u.u);
    CHECK(left.u == std::array<Int, 2>{0, 0});
    CHECK(left.w == su);
    const DivisionElement sq = division_mul(pd, pd);
    CHECK(sq.u == std::array<Int, 2>{p, 0});
    CHECK(sq.w == std::array<Int, 2>{0, 0});
    // X^2 - p annihilates the uniformizer, so its reduced norm is -p.
    CHECK(pd.reduced_norm() == ctx.reduce(-p));
    CHECK(integer_valuation(p, p) == 1);
  }
}

TEST_CASE("division multiplication is associative and the norm multiplicative") {
  std::mt19937_64 rng(11);
  for (Int p : {2, 3, 5}) {
    const PAdicContext ctx(p, 6);
    for (int i = 0; i < 200; ++i) {
      const DivisionElement x = random_division(rng, ctx), y = random_division(rng, ctx),
                            z = random_division(rng, ctx);
      const DivisionElement a = division_mul(division_mul(x, y), z);
      const DivisionElement b = division_mul(x, division_mul(y, z));
      CHECK(a.u == b.u);
      CHECK(a.w == b.w);
      CHECK(division_mul(x, y).reduced_norm() == ctx.mul(x.reduced_norm(), y.reduced_norm()));
    }
  }
}

TEST_CASE("radical filtration is multiplicative") {
  std::mt19937_64 rng(5);
  for (Int p : {2, 3}) {
    const PAdicContext ctx(p, 12);
    for (OrderKind kind : {OrderKind::kM, OrderKind::kJ})
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
          for (int i = 0; i < 10; ++i) {
            const LocalMatrix x = random_radical(rng, kind, ctx, a);
            const LocalMatrix y = random_radical(rng, kind, ctx, b);
            CHECK(radical_power_membership(kind, x, a));
            CHECK(radical_power_membership(kind, x * y, a + b));
          }
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int i = 0; i < 10; ++i) {
          DivisionElement x = random_division(rng, ctx), y = random_division(rng, ctx);
          for (int k = 0; k < a; ++k) x = division_mul(DivisionElement::uniformizer(ctx), x);
          for (int k = 0; k < b; ++k) y = division_mul(DivisionElement::uniformizer(ctx), y);
          CHECK(radical_power_membership(division_mul(x, y), a + b));
        }
  }
}

TEST_CASE("normalizers preserve the congruence subgroups") {
  std::mt19937_64 rng(9);
  for (Int p : {2, 3}) {
    const PAdicContext ctx(p, 12);
    const LocalMatrix pi = LocalMatrix::pi(ctx);
    const LocalMatrix pi_inv = pi.inverse();
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i < 20; ++i) {
        const LocalMatrix u = LocalMatrix::identity(ctx) + random_radical(rng, OrderKind::kJ, ctx, n);
        REQUIRE(congruence_subgroup_membership(OrderKind::kJ, u, n));
        CHECK(congruence_subgroup_membership(OrderKind::kJ, pi * u * pi_inv, n));
        const LocalMatrix m = LocalMatrix::identity(ctx) + random_radical(rng, OrderKind::kM, ctx, n);
        CHECK(congruence_subgroup_membership(OrderKind::kM, m.scaled(p), n) == false);
        CHECK(congruence_subgroup_membership(OrderKind::kM, m, n));
      }
    // D: conjugation by the uniformizer, via w x = y w with y = w x w^-1 = w x w / p.
    const DivisionElement w = DivisionElement::uniformizer(ctx);
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i < 20; ++i) {
        DivisionElement r = random_division(rng, ctx);
        for (int k = 0; k < n; ++k) r = division_mul(w, r);
        DivisionElement x = r;
        x.u[0] = ctx.add(x.u[0], 1);
        REQUIRE(congruence_subgroup_membership(x, n));
        const DivisionElement wxw = division_mul(division_mul(w, x), w);
        // wxw = p * (w x w^-1); divide the coordinates by p.
        DivisionElement y = wxw;
        for (auto* part : {&y.u, &y.w})
          for (Int& c : *part) {
            REQUIRE(c % p == 0);
            c /= p;
          }
        const PAdicContext lower(p, 11);
        CHECK(congruence_subgroup_membership(DivisionElement::make(lower, y.u, y.w), n));
      }
  }
}
