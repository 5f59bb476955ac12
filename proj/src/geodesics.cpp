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

#include "geomatch/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <boost/math/special_functions/expint.hpp>

#include "geomatch/error.hpp"
#include "geomatch/parallel.hpp"

namespace geomatch {

namespace {

constexpr Int kPellBruteForceLimit = 10'000;

Int isqrt(Int n) {
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(Int n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

BigInt isqrt(const BigInt& n) { return boost::multiprecision::sqrt(n); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int gcd3(Int a, Int b, Int c) { return std::gcd(std::gcd(a, b), c); }

void require_hyperbolic(Int t) {
  if (t >= -2 && t <= 2) fail(ErrorCode::kNonHyperbolicTrace, "trace must satisfy |t| > 2");
}

void require_level(int N) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "level must be positive");
  if (N > kMaxLevel) fail(ErrorCode::kLevelTooLarge, "level above " + std::to_string(kMaxLevel));
}

// Automorph of the primitive form (a, b, c) attached to (u + v sqrt(D))/2.
IntMatrix automorph(const QuadForm& f, Int u, Int v) {
  return {(u - f.b * v) / 2, -f.c * v, f.a * v, (u + f.b * v) / 2};
}

IntMatrix reduce_mod(const IntMatrix& g, Int N) {
  return {mod_pos(g[0], N), mod_pos(g[1], N), mod_pos(g[2], N), mod_pos(g[3], N)};
}

IntMatrix mul_mod(const IntMatrix& x, const IntMatrix& y, Int N) {
  return reduce_mod(matrix_mul(x, y), N);
}

Int sl2_order(Int N) {
  Int count = 0;
  for (Int a = 0; a < N; ++a)
    for (Int b = 0; b < N; ++b)
      for (Int c = 0; c < N; ++c)
        for (Int d = 0; d < N; ++d)
          if (mod_pos(a * d - b * c, N) == 1 % N) ++count;
  return count;
}

}  // namespace

Surd Surd::operator*(const Surd& o) const {
  if (d != o.d) fail(ErrorCode::kInvalidArgument, "surd radicands differ");
  return {a * o.a + b * o.b * d, a * o.b + b * o.a, d};
}

Surd Surd::operator+(const Surd& o) const {
  if (d != o.d) fail(ErrorCode::kInvalidArgument, "surd radicands differ");
  return {a + o.a, b + o.b, d};
}

Surd Surd::operator-(const Surd& o) const {
  if (d != o.d) fail(ErrorCode::kInvalidArgument, "surd radicands differ");
  return {a - o.a, b - o.b, d};
}

double Surd::to_double() const {
  return geomatch::to_double(a) + geomatch::to_double(b) * std::sqrt(static_cast<double>(d));
}

Surd PellUnit::unit() const {
  return {Rational(u, 2), Rational(v, 2), delta};
}

double PellUnit::log_unit() const {
  // Stable for large units: log((u + v sqrt D)/2) = log(u) + log1p(v sqrt D / u) - log 2.
  const double ud = u.convert_to<double>();
  const double vd = v.convert_to<double>();
  const double root = std::sqrt(static_cast<double>(delta));
  if (std::isfinite(ud) && std::isfinite(vd)) return std::log((ud + vd * root) / 2.0);
  const double lu = static_cast<double>(boost::multiprecision::msb(u));
  return lu * std::log(2.0) + std::log1p(vd / ud * root) - std::log(2.0);
}

namespace {

PellUnit pell_continued_fraction(Int delta) {
  // The unit p + q (s + sqrt D)/2 has a tiny conjugate, so p/q is a convergent
  // of (sqrt D - s)/2; stop at the first one of norm 1.
  const Int s = delta % 2;
  const BigInt D = delta;
  const BigInt r0 = isqrt(D);
  BigInt P = -s, Q = 2;
  BigInt p_prev = 0, p = 1, q_prev = 1, q = 0;
  const BigInt sb = s;
  const BigInt c = (sb * sb - D) / 4;
  for (int iter = 0; iter < 1'000'000; ++iter) {
    // a = floor((P + sqrt D)/Q); sqrt D lies strictly between r0 and r0 + 1.
    BigInt a;
    if (Q > 0) {
      a = floor_div(P + r0, Q);
    } else {
      const BigInt num = P + r0 + 1;
      const BigInt fl = floor_div(num, Q);
      a = (fl * Q == num ? fl : fl + 1) - 1;
    }
    const BigInt p_next = a * p + p_prev;
    const BigInt q_next = a * q + q_prev;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
    const BigInt norm = p * p + sb * p * q + c * q * q;
    if (norm == 1) return {delta, 2 * p + sb * q, q};
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  fail(ErrorCode::kEnumerationTooLarge, "continued fraction did not terminate");
}

}  // namespace

PellUnit pell_fundamental(Int delta) {
  if (delta <= 0) fail(ErrorCode::kInvalidArgument, "discriminant must be positive");
  if (is_square(delta)) fail(ErrorCode::kSquareDiscriminant, "square discriminant");
  if (mod_pos(delta, 4) > 1) fail(ErrorCode::kInvalidArgument, "discriminant must be 0 or 1 mod 4");
  for (Int v = 1; v <= kPellBruteForceLimit; ++v) {
    const BigInt rhs = BigInt(delta) * v * v + 4;
    const BigInt u = isqrt(rhs);
    if (u * u == rhs) return {delta, u, BigInt(v)};
  }
  return pell_continued_fraction(delta);
}

PellUnit pell_fundamental_continued_fraction(Int delta) {
  if (delta <= 0 || is_square(delta)) fail(ErrorCode::kSquareDiscriminant, "square discriminant");
  return pell_continued_fraction(delta);
}

std::vector<QuadForm> reduced_forms(Int disc) {
  if (disc <= 0) fail(ErrorCode::kInvalidArgument, "discriminant must be positive");
  if (is_square(disc)) fail(ErrorCode::kSquareDiscriminant, "square discriminant");
  const Int r0 = isqrt(disc);
  std::vector<QuadForm> out;
  for (Int b = 1; b <= r0; ++b) {
    if ((b * b - disc) % 4 != 0) continue;
    const Int ac = (b * b - disc) / 4;  // negative
    const Int m = -ac;
    for (Int d = 1; d * d <= m; ++d) {
      if (m % d != 0) continue;
      for (Int a_abs : {d, m / d}) {
        // sqrt(D) - b < 2|a| < sqrt(D) + b
        if (2 * a_abs - b > r0) continue;
        if (2 * a_abs + b < r0 + 1) continue;
        for (Int sign : {1, -1}) {
          const Int a = sign * a_abs;
          out.push_back({a, b, ac / a});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuadForm rho(const QuadForm& f) {
  const Int D = f.discriminant();
  const Int r0 = isqrt(D);
  const Int c_abs = f.c < 0 ? -f.c : f.c;
  if (c_abs == 0) fail(ErrorCode::kInvalidArgument, "degenerate form");
  const Int m = 2 * c_abs;
  Int r;
  if (c_abs * c_abs > D) {
    // -|c| < r <= |c|
    r = mod_pos(-f.b, m);
    if (r > c_abs) r -= m;
  } else {
    // sqrt(D) - 2|c| < r < sqrt(D)
    r = r0 - mod_pos(r0 + f.b, m);
  }
  return {f.c, r, (r * r - D) / (4 * f.c)};
}

IntMatrix matrix_mul(const IntMatrix& x, const IntMatrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

IntMatrix matrix_pow(const IntMatrix& x, Int k) {
  IntMatrix base = x;
  if (k < 0) {
    base = {x[3], -x[1], -x[2], x[0]};  // determinant one
    k = -k;
  }
  IntMatrix out{1, 0, 0, 1};
  for (Int i = 0; i < k; ++i) out = matrix_mul(out, base);
  return out;
}

std::vector<QuadFormClass> sl2_classes(Int t) {
  require_hyperbolic(t);
  const Int D = t * t - 4;
  const std::vector<QuadForm> forms = reduced_forms(D);
  std::set<QuadForm> seen;
  std::vector<QuadFormClass> out;
  for (const QuadForm& f : forms) {
    if (seen.count(f)) continue;
    QuadForm g = f;
    do {
      seen.insert(g);
      g = rho(g);
    } while (g != f);

    QuadFormClass cls;
    cls.t = t;
    cls.form = f;
    cls.content = gcd3(f.a < 0 ? -f.a : f.a, f.b, f.c < 0 ? -f.c : f.c);
    cls.gamma = {(t - f.b) / 2, -f.c, f.a, (t + f.b) / 2};
    const Int m = cls.content;
    const QuadForm prim{f.a / m, f.b / m, f.c / m};
    const Int delta = D / (m * m);
    cls.pell = pell_fundamental(delta);
    const Int u0 = cls.pell.u.convert_to<Int>();
    const Int v0 = cls.pell.v.convert_to<Int>();
    cls.gamma0 = automorph(prim, u0, v0);

    // Walk (u + v sqrt delta)/2 through powers of the fundamental unit until v = m.
    Int u = u0, v = v0, j = 1;
    const Int abs_t = t < 0 ? -t : t;
    while (v < m) {
      const Int nu = (u * u0 + delta * v * v0) / 2;
      const Int nv = (u * v0 + v * u0) / 2;
      u = nu;
      v = nv;
      ++j;
    }
    if (v != m || u != abs_t) fail(ErrorCode::kInvalidArgument, "class is not a power of its centralizer generator");
    cls.power_index = t > 0 ? j : -j;
    out.push_back(cls);
  }
  return out;
}

Splitting gamma_splitting(const QuadFormClass& cls, int N) {
  require_level(N);
  if (N == 1) return {1, 1};
  const IntMatrix one{1, 0, 0, 1};
  const IntMatrix minus_one = reduce_mod({-1, 0, 0, -1}, N);
  if (reduce_mod(cls.gamma, N) != one) return {0, 1};

  // The image of the centralizer is {+-g0^i}; k is the order of g0 modulo +-1.
  const IntMatrix g0 = reduce_mod(cls.gamma0, N);
  std::set<IntMatrix> group;
  IntMatrix power = one;
  Int k = 0;
  do {
    group.insert(power);
    group.insert(mul_mod(power, minus_one, N));
    power = mul_mod(power, g0, N);
    ++k;
  } while (power != one && power != minus_one);

  static const std::map<Int, Int> orders = [] {
    std::map<Int, Int> m;
    for (Int n = 1; n <= kMaxLevel; ++n) m[n] = sl2_order(n);
    return m;
  }();
  const Int total = orders.at(N);
  return {total / static_cast<Int>(group.size()), k};
}

Rational gamma_sign_factor(int N) {
  require_level(N);
  return N <= 2 ? Rational(1, 2) : Rational(1);
}

TraceRow trace_row(int N, Int t) {
  require_level(N);
  const std::vector<QuadFormClass> classes = sl2_classes(t);
  TraceRow row;
  row.t = t;
  row.class_count = static_cast<Int>(classes.size());
  double total = 0.0;
  for (const QuadFormClass& cls : classes) {
    const Splitting s = gamma_splitting(cls, N);
    if (s.count == 0) continue;
    row.classes_in_level += s.count;
    const Int j = cls.power_index < 0 ? -cls.power_index : cls.power_index;
    if (j == s.primitive_index) row.primitive_classes += s.count;
    total += static_cast<double>(s.count * s.primitive_index) * cls.pell.log_unit();
  }
  const Int abs_t = t < 0 ? -t : t;
  row.dpsi = total / std::sqrt(static_cast<double>(abs_t - 2));
  return row;
}

double dpsi_enumerated(int N, Int t) { return trace_row(N, t).dpsi; }

std::vector<Int> traces_up_to(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::kInvalidArgument, "x must be positive and finite");
  const long double X = x;
  const long double root = std::sqrt(X);
  Int T = static_cast<Int>(std::floor(root + 1.0L / root));
  // |t| <= sqrt(X) + 1/sqrt(X)  <=>  t^2 X <= (X + 1)^2
  while (T > 0 && static_cast<long double>(T) * T * X > (X + 1) * (X + 1)) --T;
  while (static_cast<long double>(T + 1) * (T + 1) * X <= (X + 1) * (X + 1)) ++T;
  std::vector<Int> out;
  for (Int t = -T; t <= -3; ++t) out.push_back(t);
  for (Int t = 3; t <= T; ++t) out.push_back(t);
  return out;
}

double trace_weight(Int t, double dpsi) {
  const Int abs_t = t < 0 ? -t : t;
  return 2.0 * std::sqrt(static_cast<double>(abs_t - 2)) * dpsi;
}

namespace {

std::vector<TraceRow> trace_rows(int N, const std::vector<Int>& traces) {
  return parallel_map<TraceRow>(traces.size(), [&](std::size_t i) { return trace_row(N, traces[i]); });
}

// Trace sets are nested in x, so one pass over rows sorted by |t| serves every grid point.
struct Accumulated {
  double psi = 0.0;
  Int pi = 0;
};

Accumulated accumulate(const std::vector<TraceRow>& rows, double x) {
  const std::vector<Int> traces = traces_up_to(x);
  const std::set<Int> wanted(traces.begin(), traces.end());
  Accumulated acc;
  for (const TraceRow& row : rows) {
    if (!wanted.count(row.t)) continue;
    acc.psi += trace_weight(row.t, row.dpsi);
    acc.pi += row.primitive_classes;
  }
  return acc;
}

}  // namespace

double psi_enumerated(int N, double x) {
  const std::vector<TraceRow> rows = trace_rows(N, traces_up_to(x));
  return to_double(gamma_sign_factor(N)) * accumulate(rows, x).psi;
}

Rational pi_enumerated(int N, double x) {
  const std::vector<TraceRow> rows = trace_rows(N, traces_up_to(x));
  return gamma_sign_factor(N) * Rational(accumulate(rows, x).pi);
}

double logarithmic_integral(double x) {
  if (!(x > 1.0)) fail(ErrorCode::kInvalidArgument, "li(x) needs x > 1");
  return boost::math::expint(std::log(x));
}

SpectrumReport pgt_report(int N, const std::vector<double>& grid) {
  require_level(N);
  if (grid.empty()) fail(ErrorCode::kInvalidArgument, "empty grid");
  SpectrumReport report;
  report.N = N;
  const double x_max = *std::max_element(grid.begin(), grid.end());
  report.traces = trace_rows(N, traces_up_to(x_max));
  const double c = to_double(gamma_sign_factor(N));
  for (double x : grid) {
    const Accumulated acc = accumulate(report.traces, x);
    PgtRow row;
    row.x = x;
    row.psi = c * acc.psi;
    row.psi_minus_x = row.psi - x;
    row.x_pow_7_10 = std::pow(x, 0.7);
    row.pi = c * static_cast<double>(acc.pi);
    row.li_x = logarithmic_integral(x);
    row.pi_minus_li = row.pi - row.li_x;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace geomatch
