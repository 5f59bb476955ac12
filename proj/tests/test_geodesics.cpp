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

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "geomatch/error.hpp"
#include "geomatch/geodesics.hpp"

using namespace geomatch;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

// Conjugacy classes of trace t among SL_2(Z) matrices with entries bounded by B,
// joined under conjugation by S, T and T^-1 while staying inside the box.
struct BoxClasses {
  std::map<IntMatrix, IntMatrix> parent;

  IntMatrix find(IntMatrix x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(const IntMatrix& x, const IntMatrix& y) {
    if (!parent.count(y)) return;
    parent[find(x)] = find(y);
  }
  BoxClasses(Int t, Int B) {
    for (Int a = -B; a <= B; ++a) {
      const Int d = t - a;
      if (std::llabs(d) > B) continue;
      const Int bc = a * d - 1;
      for (Int b = -B; b <= B; ++b) {
        if (b == 0 || bc % b != 0) continue;
        const Int c = bc / b;
        if (std::llabs(c) <= B) parent[{a, b, c, d}] = {a, b, c, d};
      }
    }
    const IntMatrix S{0, -1, 1, 0}, Si{0, 1, -1, 0}, T{1, 1, 0, 1}, Ti{1, -1, 0, 1};
    for (const auto& [x, unused] : std::map<IntMatrix, IntMatrix>(parent)) {
      join(x, matrix_mul(matrix_mul(S, x), Si));
      join(x, matrix_mul(matrix_mul(T, x), Ti));
      join(x, matrix_mul(matrix_mul(Ti, x), T));
    }
  }
  std::size_t count() {
    std::set<IntMatrix> roots;
    for (const auto& [x, unused] : std::map<IntMatrix, IntMatrix>(parent)) roots.insert(find(x));
    return roots.size();
  }
};

Int trace(const IntMatrix& g) { return g[0] + g[3]; }

Surd surd_pow(Surd x, Int k) {
  Surd out{1, 0, x.d};
  for (Int i = 0; i < k; ++i) out = out * x;
  return out;
}

}  // namespace

TEST_CASE("class count examples") {
  CHECK(sl2_classes(3).size() == 1);
  CHECK(sl2_classes(-3).size() == 1);
  CHECK(sl2_classes(4).size() == 2);
  CHECK(sl2_classes(10).size() == 6);
  CHECK(code_of([] { sl2_classes(2); }) == ErrorCode::kNonHyperbolicTrace);
  CHECK(code_of([] { sl2_classes(-1); }) == ErrorCode::kNonHyperbolicTrace);
}

TEST_CASE("class lists agree with a brute-force conjugation search") {
  for (Int t = -12; t <= 12; ++t) {
    if (std::llabs(t) <= 2) continue;
    BoxClasses box(t, 50);
    const std::vector<QuadFormClass> classes = sl2_classes(t);
    CHECK(box.count() == classes.size());
    std::set<IntMatrix> roots;
    for (const QuadFormClass& cls : classes) {
      REQUIRE(box.parent.count(cls.gamma));
      roots.insert(box.find(cls.gamma));
    }
    CHECK(roots.size() == classes.size());
  }
}

TEST_CASE("reduced forms and the rho cycle") {
  for (Int t = 3; t <= 40; ++t) {
    const Int D = t * t - 4;
    const Int r = static_cast<Int>(std::sqrt(static_cast<double>(D)));
    std::set<QuadForm> all;
    for (const QuadForm& f : reduced_forms(D)) {
      CHECK(f.discriminant() == D);
      CHECK(f.b > 0);
      CHECK(f.b <= r);
      all.insert(f);
    }
    for (const QuadForm& f : all) CHECK(all.count(rho(f)));
    // Each class is one rho cycle, so the cycles partition the reduced forms.
    std::size_t covered = 0;
    for (const QuadFormClass& cls : sl2_classes(t)) {
      QuadForm f = cls.form;
      do {
        ++covered;
        CHECK(cls.form <= f);
        f = rho(f);
      } while (f != cls.form);
    }
    CHECK(covered == all.size());
  }
}

TEST_CASE("class data is internally consistent") {
  for (Int t : {-18, -7, 3, 4, 10, 18, 23}) {
    for (const QuadFormClass& cls : sl2_classes(t)) {
      const IntMatrix& g = cls.gamma;
      CHECK(trace(g) == t);
      CHECK(g[0] * g[3] - g[1] * g[2] == 1);
      CHECK(cls.content == std::gcd(std::gcd(cls.form.a, cls.form.b), cls.form.c));
      CHECK(trace(cls.gamma0) > 2);
      const Int j = std::llabs(cls.power_index);
      CHECK((cls.power_index < 0) == (t < 0));
      const IntMatrix minus{-g[0], -g[1], -g[2], -g[3]};
      CHECK(matrix_pow(cls.gamma0, cls.power_index) == (t > 0 ? g : minus));
      // The centralizer generator has eigenvalue equal to the Pell unit.
      const Surd eps = cls.pell.unit();
      CHECK(eps * eps.conjugate() == Surd{1, 0, eps.d});
      CHECK(eps + eps.conjugate() == Surd{trace(cls.gamma0), 0, eps.d});
      const Surd e_j = surd_pow(eps, j);
      CHECK(e_j + e_j.conjugate() == Surd{std::llabs(t), 0, eps.d});
    }
  }
  const std::vector<QuadFormClass> at18 = sl2_classes(18);
  CHECK(at18.size() == 8);
  bool seen = false;
  for (const QuadFormClass& cls : at18)
    if (cls.content == 8) {
      seen = true;
      CHECK(cls.power_index == 3);
    }
  CHECK(seen);
}

TEST_CASE("Pell examples") {
  auto check = [](Int delta, Int u, Int v) {
    const PellUnit e = pell_fundamental(delta);
    CHECK(e.u == u);
    CHECK(e.v == v);
  };
  check(5, 3, 1);
  check(8, 6, 2);
  check(12, 4, 1);
  CHECK(code_of([] { pell_fundamental(9); }) == ErrorCode::kSquareDiscriminant);
  CHECK(code_of([] { pell_fundamental(-3); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("Pell units are minimal and both routes agree") {
  for (Int delta = 5; delta < 1500; ++delta) {
    const Int r = static_cast<Int>(std::sqrt(static_cast<double>(delta)));
    if (r * r == delta || (r + 1) * (r + 1) == delta || (delta % 4 != 0 && delta % 4 != 1)) continue;
    const PellUnit a = pell_fundamental(delta);
    const PellUnit b = pell_fundamental_continued_fraction(delta);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.u * a.u - delta * a.v * a.v == 4);
    if (a.v < 200) {
      const Int v0 = a.v.convert_to<Int>();
      for (Int v = 1; v < v0; ++v) {
        const Int u2 = 4 + delta * v * v;
        const Int u = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(u2))));
        CHECK(u * u != u2);
      }
    }
  }
}

TEST_CASE("level splitting examples") {
  const QuadFormClass c3 = sl2_classes(3).front();
  const Splitting one = gamma_splitting(c3, 1);
  CHECK(one.count == 1);
  CHECK(one.primitive_index == 1);
  CHECK(gamma_splitting(c3, 2).count == 0);
  for (const QuadFormClass& cls : sl2_classes(18))
    if (cls.content == 8) {
      const Splitting s = gamma_splitting(cls, 2);
      CHECK(s.count == 2);
      CHECK(s.primitive_index == 3);
    }
  CHECK(code_of([&] { gamma_splitting(c3, kMaxLevel + 1); }) == ErrorCode::kLevelTooLarge);
  CHECK(gamma_sign_factor(1) == Rational(1, 2));
  CHECK(gamma_sign_factor(2) == Rational(1, 2));
  CHECK(gamma_sign_factor(3) == 1);
}

TEST_CASE("dPsi examples") {
  CHECK(dpsi_enumerated(1, 3) == doctest::Approx(0.962423650119).epsilon(1e-11));
  CHECK(dpsi_enumerated(2, 5) == 0.0);
  CHECK(dpsi_enumerated(3, 11) != 0.0);
  CHECK(dpsi_enumerated(3, -11) == 0.0);
  CHECK(dpsi_enumerated(1, 7) == dpsi_enumerated(1, -7));
  CHECK(code_of([] { dpsi_enumerated(1, 2); }) == ErrorCode::kNonHyperbolicTrace);
  CHECK(code_of([] { dpsi_enumerated(7, 3); }) == ErrorCode::kLevelTooLarge);
}

TEST_CASE("trace selection") {
  CHECK(traces_up_to(6.8).empty());
  CHECK(traces_up_to(6.9) == std::vector<Int>{-3, 3});
  for (double x : {10.0, 99.0, 1000.0, 12345.0})
    for (Int t : traces_up_to(x)) CHECK(static_cast<double>(t * t) * x <= (x + 1) * (x + 1));
}

TEST_CASE("counting functions") {
  CHECK(psi_enumerated(1, 6.8) == 0.0);
  CHECK(pi_enumerated(1, 6.8) == 0);
  CHECK(psi_enumerated(1, 6.9) > 0.0);
  for (double x : {1e3, 1e4}) {
    const double psi = psi_enumerated(1, x);
    CHECK(psi / x >= 0.8);
    CHECK(psi / x <= 1.2);
    CHECK(std::abs(psi - x) <= 2.0 * std::pow(x, 0.75));
  }
  // Psi is the weighted sum of its own rows.
  const double x = 3000.0;
  double sum = 0.0;
  for (Int t : traces_up_to(x)) sum += trace_weight(t, dpsi_enumerated(1, t));
  CHECK(psi_enumerated(1, x) == doctest::Approx(sum / 2).epsilon(1e-12));
}

TEST_CASE("spectrum report columns") {
  std::vector<double> grid;
  for (double x = 10.0; x <= 20000.0; x *= 1.3) grid.push_back(x);
  const SpectrumReport report = pgt_report(1, grid);
  REQUIRE(report.rows.size() == grid.size());
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].psi >= report.rows[i - 1].psi);
    CHECK(report.rows[i].pi >= report.rows[i - 1].pi);
  }
  for (const PgtRow& row : report.rows) {
    CHECK(row.psi == doctest::Approx(psi_enumerated(1, row.x)).epsilon(1e-12));
    CHECK(row.pi == to_double(pi_enumerated(1, row.x)));
    CHECK(row.li_x == doctest::Approx(logarithmic_integral(row.x)));
  }
  // pi only moves at the norm of a trace present at that level.
  Rational last = 0;
  for (Int t = 3; t <= 60; ++t) {
    const double norm = std::pow((t + std::sqrt(static_cast<double>(t * t - 4))) / 2, 2);
    CHECK(pi_enumerated(1, norm * (1 - 1e-9)) == last);
    last = pi_enumerated(1, norm * (1 + 1e-9));
    CHECK(last >= pi_enumerated(1, norm * (1 - 1e-9)));
  }
  CHECK(logarithmic_integral(1e4) == doctest::Approx(1246.137).epsilon(1e-6));
}
