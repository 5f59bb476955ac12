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

#include "geomatch/oracle.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <tuple>

#include "geomatch/parallel.hpp"

namespace geomatch {

namespace {

Int ipow(Int p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

PAdicContext wide_context(Int p) { return PAdicContext(p, PAdicContext::max_precision(p)); }

// Fails unless p^exponent <= kEnumerationLimit; the power saturates instead of overflowing.
void check_enumeration(Int p, int exponent, const std::string& what) {
  Int elements = 1;
  for (int i = 0; i < exponent && elements <= kEnumerationLimit; ++i) elements *= p;
  if (elements > kEnumerationLimit) {
    fail(ErrorCode::kEnumerationTooLarge,
         what + " needs " + std::to_string(p) + "^" + std::to_string(exponent) + " elements (limit " +
             std::to_string(kEnumerationLimit) + ")");
  }
}

// Valuation of an integer residue in [0, p^L), with 0 read as "at least L".
int residue_valuation(Int x, Int p, int cap) {
  if (x == 0) return cap;
  int k = 0;
  while (x % p == 0 && k < cap) {
    x /= p;
    ++k;
  }
  return k;
}

template <typename Key, typename Value>
class Memo {
 public:
  template <typename Fn>
  Value get(const Key& key, Fn compute) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    Value v = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    table_.emplace(key, v);
    return v;
  }

 private:
  std::mutex mutex_;
  std::map<Key, Value> table_;
};

using TorusKey = std::tuple<int, Int, Int, Int, int>;

TorusKey torus_key(OrderKind kind, const TorusData& torus, int r) {
  return {static_cast<int>(kind), torus.context.prime(), torus.theta_trace, torus.theta_norm,
          r};
}

// Quotient depth at which x = 1 mod P^n is decided.
int quotient_level(OrderKind kind, int n) {
  switch (kind) {
    case OrderKind::kM: return n;
    case OrderKind::kJ: return n / 2 + 1;
    case OrderKind::kD: return (n + 1) / 2;
  }
  return n;
}

LocalMatrix embed(const LocalMatrix& theta, Int alpha, Int beta) {
  return LocalMatrix::identity(theta.context).scaled(alpha) + theta.scaled(beta);
}

}  // namespace

LocalMatrix base_embedding(const TorusData& torus, int k) {
  const PAdicContext& ctx = torus.context;
  const Int p = ctx.prime();
  const Int s = torus.theta_trace;
  const Int m = torus.theta_norm;
  if (k >= 0) {
    return LocalMatrix::make(ctx, 0, -m, ctx.pow(p, 2 * k), ctx.mul(s, ctx.pow(p, k)), k);
  }
  const int kk = -k;
  return LocalMatrix::make(ctx, 0, ctx.mul(-m, ctx.pow(p, 2 * kk)), 1, ctx.mul(s, ctx.pow(p, kk)),
                           kk);
}

bool is_optimal(OrderKind kind, const LocalMatrix& theta, int r) {
  LocalMatrix a = theta;
  a.den -= r;
  if (!radical_power_membership(kind, a, 0)) return false;
  const Int p = theta.context.prime();
  const LocalMatrix one = LocalMatrix::identity(theta.context);
  for (Int c1 = 0; c1 < p; ++c1) {
    for (Int c2 = 0; c2 < p; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      LocalMatrix b = one.scaled(c1) + a.scaled(c2);
      b.den += 1;
      if (radical_power_membership(kind, b, 0)) return false;
    }
  }
  return true;
}

std::optional<LocalMatrix> find_optimal_embedding(OrderKind kind, const TorusData& torus, int r) {
  if (kind == OrderKind::kD) fail(ErrorCode::kInvalidArgument, "matrix embedding into D");
  static Memo<TorusKey, std::optional<LocalMatrix>> memo;
  return memo.get(torus_key(kind, torus, r), [&]() -> std::optional<LocalMatrix> {
    const PAdicContext& ctx = torus.context;
    const Int p = ctx.prime();
    std::vector<LocalMatrix> conjugators{LocalMatrix::identity(ctx),
                                         LocalMatrix::make(ctx, 0, 1, 1, 0)};
    for (Int j = 1; j < p; ++j) {
      conjugators.push_back(LocalMatrix::make(ctx, 1, j, 0, 1));
      conjugators.push_back(LocalMatrix::make(ctx, 1, 0, j, 1));
    }
    for (int k = -r - 1; k <= 2; ++k) {
      LocalMatrix base = base_embedding(torus, k);
      for (const LocalMatrix& c : conjugators) {
        LocalMatrix theta = c.inverse() * base * c;
        if (is_optimal(kind, theta, r)) return theta;
      }
    }
    return std::nullopt;
  });
}

std::optional<DivisionElement> find_division_embedding(const TorusData& torus, int digits) {
  if (!torus.is_field()) fail(ErrorCode::kInvalidArgument, "split torus has no division embedding");
  static Memo<TorusKey, std::optional<DivisionElement>> memo;
  return memo.get(torus_key(OrderKind::kD, torus, digits), [&]() -> std::optional<DivisionElement> {
    const PAdicContext& ctx = torus.context;
    const Int p = ctx.prime();
    const Int mod = ipow(p, digits);
    const Int low = mod / p;
    check_enumeration(p, 2 * digits, "division embedding search");
    const PAdicContext small(p, digits);
    const UnramifiedExtension ext = UnramifiedExtension::for_prime(p);
    const Int s = small.reduce(torus.theta_trace);
    const Int m = small.reduce(torus.theta_norm);
    // Norms of O_K / p^(digits-1), for solving N(w) = target.
    const PAdicContext lower(p, std::max(digits - 1, 1));
    std::map<Int, std::array<Int, 2>> norm_preimage;
    for (Int w0 = 0; w0 < low; ++w0) {
      for (Int w1 = 0; w1 < low; ++w1) {
        norm_preimage.emplace(ext_norm(ext, lower, {w0, w1}), std::array<Int, 2>{w0, w1});
      }
    }
    // Tr(u) = 2 u0 + trace * u1 = s and N(u) - p N(w) = m.
    for (Int u0 = 0; u0 < mod; ++u0) {
      for (Int u1 = 0; u1 < mod; ++u1) {
        if (small.add(small.mul(2, u0), small.mul(ext.trace, u1)) != s) continue;
        Int target = small.sub(ext_norm(ext, small, {u0, u1}), m);
        if (target % p != 0) continue;
        auto it = norm_preimage.find(lower.reduce(target / p));
        if (it == norm_preimage.end()) continue;
        return DivisionElement::make(ctx, {u0, u1}, it->second);
      }
    }
    return std::nullopt;
  });
}

Int enumerate_order_unit_index(OrderKind kind, int n, Int p) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  if (n == 0) return 1;
  static Memo<std::tuple<int, int, Int>, Int> memo;
  return memo.get({static_cast<int>(kind), n, p}, [&]() -> Int {
    const int level = quotient_level(kind, n);
    const Int mod = ipow(p, level);
    check_enumeration(p, kind == OrderKind::kJ ? 4 * level - 1 : 4 * level,
                      std::string("unit index of ") + to_string(kind));
    const PAdicContext ctx = wide_context(p);
    const Int step_c = kind == OrderKind::kJ ? p : 1;
    struct Counts {
      Int units = 0;
      Int congruent = 0;
    };
    // One task per leading coordinate; merged in index order.
    std::vector<Counts> parts = parallel_map<Counts>(static_cast<std::size_t>(mod), [&](std::size_t i) {
      Counts c;
      const Int a = static_cast<Int>(i);
      for (Int b = 0; b < mod; ++b) {
        for (Int cc = 0; cc < mod; cc += step_c) {
          for (Int d = 0; d < mod; ++d) {
            if (kind == OrderKind::kD) {
              DivisionElement x = DivisionElement::make(ctx, {a, b}, {cc, d});
              if (!ctx.is_unit(x.reduced_norm())) continue;
              ++c.units;
              if (radical_power_membership(DivisionElement::make(ctx, {a - 1, b}, {cc, d}), n)) {
                ++c.congruent;
              }
              continue;
            }
            bool unit = kind == OrderKind::kM ? ((a * d - b * cc) % p + p) % p != 0
                                              : (a % p != 0 && d % p != 0);
            if (!unit) continue;
            ++c.units;
            if (radical_power_membership(kind, LocalMatrix::make(ctx, a - 1, b, cc, d - 1), n)) {
              ++c.congruent;
            }
          }
        }
      }
      return c;
    });
    Counts total;
    for (const Counts& c : parts) {
      total.units += c.units;
      total.congruent += c.congruent;
    }
    return total.units / total.congruent;
  });
}

namespace {

Int enumerate_split_index(OrderKind kind, Int p, int r) {
  static Memo<std::tuple<int, Int, int>, Int> memo;
  return memo.get({static_cast<int>(kind), p, r}, [&]() -> Int {
    const Int mod = ipow(p, r);
    check_enumeration(p, 2 * r, "split stabilizer index");
    const PAdicContext ctx = wide_context(p);
    const Int pr = ctx.pow(p, r);
    const LocalMatrix nr = LocalMatrix::make(ctx, pr, 1, 0, pr, r);
    const LocalMatrix nr_inv = LocalMatrix::make(ctx, pr, -1, 0, pr, r);
    Int all = 0;
    Int stable = 0;
    for (Int a = 0; a < mod; ++a) {
      if (a % p == 0) continue;
      for (Int b = 0; b < mod; ++b) {
        if (b % p == 0) continue;
        ++all;
        LocalMatrix conj = nr_inv * LocalMatrix::make(ctx, a, 0, 0, b) * nr;
        if (congruence_subgroup_membership(kind, conj, 0)) ++stable;
      }
    }
    return all / stable;
  });
}

}  // namespace

Int enumerate_quad_index(OrderKind kind, const TorusData& torus, int r) {
  if (r == 0) return 1;
  static Memo<TorusKey, Int> memo;
  return memo.get(torus_key(kind, torus, r), [&]() -> Int {
    std::optional<LocalMatrix> theta = find_optimal_embedding(kind, torus, r);
    if (!theta) {
      fail(ErrorCode::kInvalidArgument,
           std::string("no valid embedding found for ") + to_string(kind) + " at r=" +
               std::to_string(r));
    }
    const PAdicContext& ctx = torus.context;
    const Int p = ctx.prime();
    const Int mod = ipow(p, r);
    check_enumeration(p, 2 * r, "quadratic order index");
    Int units = 0;
    Int inside = 0;
    for (Int c1 = 0; c1 < mod; ++c1) {
      for (Int c2 = 0; c2 < mod; ++c2) {
        Int norm = ctx.add(ctx.add(ctx.mul(c1, c1), ctx.mul(ctx.mul(c1, c2), torus.theta_trace)),
                           ctx.mul(ctx.mul(c2, c2), torus.theta_norm));
        if (!ctx.is_unit(norm)) continue;
        ++units;
        if (congruence_subgroup_membership(kind, embed(*theta, c1, c2), 0)) ++inside;
      }
    }
    return units / inside;
  });
}

NormImage enumerate_norm_image(OrderKind kind, int n, Int p) {
  static Memo<std::tuple<int, int, Int>, NormImage> memo;
  return memo.get({static_cast<int>(kind), n, p}, [&]() -> NormImage {
    const int depth = (kind == OrderKind::kM ? n : (n + 1) / 2) + 2;
    check_enumeration(p, depth, "norm image modulus");
    const Int mod = ipow(p, depth);
    const PAdicContext ctx = wide_context(p);
    const PAdicContext quotient(p, depth);
    std::vector<char> seen(static_cast<std::size_t>(mod), 0);
    NormImage out;

    auto record = [&](Int value) {
      Int v = quotient.reduce(value);
      if (!seen[static_cast<std::size_t>(v)]) seen[static_cast<std::size_t>(v)] = 1;
    };

    if (kind == OrderKind::kD) {
      // Superset of P_D^n: u in p^ceil(n/2) O_K, w in p^floor(n/2) O_K.
      const int vu = (n + 1) / 2;
      const int vw = n / 2;
      const Int su = ipow(p, std::min(vu, depth));
      const Int sw = ipow(p, std::min(vw, depth));
      check_enumeration(p, 4 * depth - 2 * std::min(vu, depth) - 2 * std::min(vw, depth), "reduced norm image");
      for (Int u0 = 0; u0 < mod; u0 += su)
        for (Int u1 = 0; u1 < mod; u1 += su)
          for (Int w0 = 0; w0 < mod; w0 += sw)
            for (Int w1 = 0; w1 < mod; w1 += sw) {
              DivisionElement e = DivisionElement::make(ctx, {u0, u1}, {w0, w1});
              if (!radical_power_membership(e, n)) continue;
              DivisionElement x = DivisionElement::make(ctx, {u0 + (n > 0 ? 1 : 0), u1}, {w0, w1});
              if (!ctx.is_unit(x.reduced_norm())) continue;
              ++out.elements;
              record(x.reduced_norm());
            }
    } else {
      const int floor_v = kind == OrderKind::kM ? n : n / 2;
      const Int step = ipow(p, std::min(floor_v, depth));
      check_enumeration(p, 4 * (depth - std::min(floor_v, depth)), "determinant image");
      for (Int a = 0; a < mod; a += step)
        for (Int b = 0; b < mod; b += step)
          for (Int c = 0; c < mod; c += step)
            for (Int d = 0; d < mod; d += step) {
              LocalMatrix e = LocalMatrix::make(ctx, a, b, c, d);
              if (!radical_power_membership(kind, e, n)) continue;
              Int shift = n > 0 ? 1 : 0;
              LocalMatrix x = LocalMatrix::make(ctx, a + shift, b, c, d + shift);
              if (!congruence_subgroup_membership(kind, x, 0)) continue;
              ++out.elements;
              record(x.det_numerator());
            }
    }

    Int image = 0;
    int level = depth;
    for (Int v = 0; v < mod; ++v) {
      if (!seen[static_cast<std::size_t>(v)]) continue;
      ++image;
      level = std::min(level, residue_valuation(quotient.sub(v, 1), p, depth));
    }
    const Int units = (mod / p) * (p - 1);
    // At p = 2, U_o^0 = U_o^1; the whole unit group is reported as level 0.
    if (image == units) level = 0;
    Int expected = level == 0 ? units : ipow(p, depth - level);
    out.level = level;
    out.full = image == expected;
    out.index = units / image;
    return out;
  });
}

OrbitalValue oracle_orbital(const TestFunctionSpec& spec, const RegularElement& x, int M) {
  const TorusData& torus = x.torus();
  const PAdicContext& ctx = torus.context;
  const Int p = ctx.prime();
  const int n = spec.n;
  if (n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  if (M < n + ctx.guard()) {
    fail(ErrorCode::kPrecisionExhausted,
         "oracle precision M=" + std::to_string(M) + " below n + guard = " +
             std::to_string(n + ctx.guard()));
  }
  const bool j_kind = spec.kind == OrderKind::kJ;
  Rational scale(enumerate_order_unit_index(spec.kind, n, p));
  if (spec.include_norm_index) scale /= enumerate_norm_image(spec.kind, n, p).index;

  if (x.is_split()) {
    if (spec.kind == OrderKind::kD) fail(ErrorCode::kInvalidArgument, "phi_n on a split torus");
    // Cosets E^x n(p^-r) K_O; the J-side doubles through the Pi coset.
    const LocalMatrix diag = LocalMatrix::make(ctx, x.a(), 0, 0, x.b());
    Rational sum = 0;
    for (int r = 0; r <= x.gap_valuation() + 2; ++r) {
      const Int pr = ctx.pow(p, r);
      LocalMatrix conj = LocalMatrix::make(ctx, pr, -1, 0, pr, r) * diag *
                         LocalMatrix::make(ctx, pr, 1, 0, pr, r);
      if (!congruence_subgroup_membership(spec.kind, conj, n)) continue;
      Int weight = r == 0 ? 1 : enumerate_split_index(spec.kind, p, r);
      sum += Rational(j_kind ? 2 * weight : weight);
    }
    return {sum * scale, Normalization::kSplitUnits, spec.include_norm_index};
  }

  if (spec.kind == OrderKind::kD) {
    std::optional<DivisionElement> z = find_division_embedding(torus, M + 2);
    if (!z) fail(ErrorCode::kInvalidArgument, "no division embedding found");
    DivisionElement image = DivisionElement::make(
        ctx, {ctx.add(x.alpha(), ctx.mul(x.beta(), z->u[0])), ctx.mul(x.beta(), z->u[1])},
        {ctx.mul(x.beta(), z->w[0]), ctx.mul(x.beta(), z->w[1])});
    // D^x / F^x O_D^x has order 2 and E^x / F^x O_E^x has order e.
    Rational value = congruence_subgroup_membership(image, n) ? Rational(2, torus.e) : Rational(0);
    return {value * scale, Normalization::kFieldUnits, spec.include_norm_index};
  }

  Rational sum = 0;
  for (int r = 0; r <= x.conductor() + 2; ++r) {
    std::optional<LocalMatrix> theta = find_optimal_embedding(spec.kind, torus, r);
    if (!theta) {
      if (j_kind && r == 0 && torus.e == 1) continue;
      fail(ErrorCode::kInvalidArgument, std::string("no valid embedding found for ") +
                                            to_string(spec.kind) + " at r=" + std::to_string(r));
    }
    if (!congruence_subgroup_membership(spec.kind, embed(*theta, x.alpha(), x.beta()), n)) continue;
    Int weight = r == 0 ? 1 : enumerate_quad_index(spec.kind, torus, r);
    // For r >= 1 the J-cosets also meet J^x Pi, whose class mod p^Z has order 2.
    sum += Rational(j_kind && r >= 1 ? 2 * weight : weight);
  }
  return {sum * scale, Normalization::kFieldUnits, spec.include_norm_index};
}

const char* to_string(Decomposition d) {
  switch (d) {
    case Decomposition::kSplitM: return "split-M";
    case Decomposition::kSplitJ: return "split-J";
    case Decomposition::kNonsplitM: return "nonsplit-M";
    case Decomposition::kNonsplitJ: return "nonsplit-J";
  }
  return "?";
}

Decomposition parse_decomposition(const std::string& text) {
  for (Decomposition d : {Decomposition::kSplitM, Decomposition::kSplitJ, Decomposition::kNonsplitM,
                          Decomposition::kNonsplitJ}) {
    if (text == to_string(d)) return d;
  }
  fail(ErrorCode::kInvalidArgument, "unknown decomposition '" + text + "'");
}

namespace {

// All r in [0, bound] at which g^-1 theta g is optimal.
std::vector<int> optimal_levels(OrderKind kind, const LocalMatrix& theta, int bound) {
  std::vector<int> out;
  for (int r = 0; r <= bound; ++r) {
    if (is_optimal(kind, theta, r)) out.push_back(r);
  }
  return out;
}

struct CoverageChunk {
  Int violations = 0;
  std::vector<std::string> examples;
  std::map<int, Int> histogram;
  std::array<Int, 2> sides{};
};

constexpr std::size_t kCoverageChunks = 64;
constexpr std::size_t kMaxExamples = 5;

}  // namespace

CoverageReport coset_coverage_test(Decomposition decomposition, TorusKind field_kind, Int p,
                                   int M, Int samples, std::uint64_t seed) {
  if (M < 1) fail(ErrorCode::kInvalidArgument, "M must be positive");
  if (samples < 1) fail(ErrorCode::kInvalidArgument, "samples must be positive");
  Int mod = 1;
  for (int i = 0; i < M && mod <= (Int{1} << 16); ++i) mod *= p;
  if (mod > (Int{1} << 16)) fail(ErrorCode::kEnumerationTooLarge, "p^M above 2^16 for sampling");
  const bool split = decomposition == Decomposition::kSplitM || decomposition == Decomposition::kSplitJ;
  if (!split && field_kind == TorusKind::kSplit) {
    fail(ErrorCode::kInvalidArgument, "nonsplit decomposition needs a field torus");
  }
  const OrderKind kind = (decomposition == Decomposition::kSplitM ||
                          decomposition == Decomposition::kNonsplitM)
                             ? OrderKind::kM
                             : OrderKind::kJ;
  const TorusKind tk = split ? TorusKind::kSplit : field_kind;
  const TorusData torus = model_torus(tk, p, PAdicContext::max_precision(p));
  const PAdicContext& ctx = torus.context;
  const LocalMatrix theta = split ? LocalMatrix::make(ctx, 1, 0, 0, 0) : base_embedding(torus, 0);

  auto classify = [&](const LocalMatrix& g, CoverageChunk& out) {
    int bound = ctx.valuation(g.det_numerator()) + 3;
    LocalMatrix t = g.inverse() * theta * g;
    std::vector<int> levels = optimal_levels(kind, t, bound);
    if (levels.size() != 1) {
      ++out.violations;
      if (out.examples.size() < kMaxExamples) {
        std::ostringstream os;
        os << "g=[[" << g[0] << "," << g[1] << "],[" << g[2] << "," << g[3] << "]] hits "
           << levels.size() << " cosets";
        out.examples.push_back(os.str());
      }
      return -1;
    }
    ++out.histogram[levels[0]];
    if (decomposition == Decomposition::kSplitJ) {
      std::vector<int> vertex = optimal_levels(OrderKind::kM, t, bound);
      bool near = vertex.size() == 1 && vertex[0] == levels[0];
      ++out.sides[near ? 0 : 1];
    }
    return levels[0];
  };

  std::vector<CoverageChunk> chunks =
      parallel_map<CoverageChunk>(kCoverageChunks, [&](std::size_t c) {
        CoverageChunk out;
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (c + 1)));
        std::uniform_int_distribution<Int> entry(0, mod - 1);
        Int quota = samples / static_cast<Int>(kCoverageChunks) +
                    (static_cast<Int>(c) < samples % static_cast<Int>(kCoverageChunks) ? 1 : 0);
        for (Int i = 0; i < quota;) {
          Int a = entry(rng), b = entry(rng), cc = entry(rng), d = entry(rng);
          if (a * d - b * cc == 0) continue;
          classify(LocalMatrix::make(ctx, a, b, cc, d), out);
          ++i;
        }
        return out;
      });

  CoverageReport report;
  report.decomposition = decomposition;
  report.torus_kind = tk;
  report.p = p;
  report.M = M;
  report.samples = samples;
  report.seed = seed;
  for (const CoverageChunk& c : chunks) {
    report.violations += c.violations;
    for (const auto& e : c.examples) {
      if (report.examples.size() < kMaxExamples) report.examples.push_back(e);
    }
    for (const auto& [r, hits] : c.histogram) report.histogram[r] += hits;
    report.sides[0] += c.sides[0];
    report.sides[1] += c.sides[1];
  }
  CoverageChunk scratch;
  report.identity_index = classify(LocalMatrix::identity(ctx), scratch);
  return report;
}

IntersectionReport radical_intersection_test(OrderKind kind, const TorusData& torus, int r, int n,
                                             int M) {
  if (kind == OrderKind::kD) fail(ErrorCode::kInvalidArgument, "intersection test needs M or J");
  if (!torus.is_field()) fail(ErrorCode::kInvalidArgument, "intersection test needs a field torus");
  if (r < 0 || n < 0) fail(ErrorCode::kInvalidArgument, "negative level");
  if (M < n + r + 1) {
    fail(ErrorCode::kPrecisionExhausted, "intersection test needs M >= n + r + 1");
  }
  const Int p = torus.context.prime();
  const Int mod = ipow(p, M);
  check_enumeration(p, 2 * M, "radical intersection");

  IntersectionReport report;
  report.kind = kind;
  report.torus_kind = torus.kind;
  report.r = r;
  report.n = n;
  report.M = M;
  std::optional<LocalMatrix> theta = find_optimal_embedding(kind, torus, r);
  report.embedding_found = theta.has_value();
  if (!theta) {
    report.predicted = "no valid embedding found";
    return report;
  }

  // Predicted module as thresholds (a, b) on (v(c1), v(c2)) for c1 + c2 theta0,
  // or the P_E filtration when ramified = true.
  int a = n;
  int b = n + r;
  bool p_e = false;
  const int k = (n + 1) / 2;
  if (kind == OrderKind::kM) {
    report.predicted = "p^" + std::to_string(n) + " L_" + std::to_string(r);
  } else if (n % 2 == 0) {
    a = n / 2;
    b = n / 2 + r;
    report.predicted = "p^" + std::to_string(n / 2) + " L_" + std::to_string(r);
  } else if (r >= 1) {
    a = k;
    b = k + r - 1;
    report.predicted = "p^" + std::to_string(k) + " L_" + std::to_string(r - 1);
  } else {
    p_e = true;
    report.predicted = "P_E^" + std::to_string(n);
  }

  std::vector<Int> mismatches = parallel_map<Int>(static_cast<std::size_t>(mod), [&](std::size_t i) {
    Int bad = 0;
    const Int c1 = static_cast<Int>(i);
    const int v1 = residue_valuation(c1, p, M);
    for (Int c2 = 0; c2 < mod; ++c2) {
      const int v2 = residue_valuation(c2, p, M);
      bool predicted = p_e ? std::min(2 * v1, 2 * v2 + 1) >= n : (v1 >= a && v2 >= b);
      bool actual = radical_power_membership(kind, embed(*theta, c1, c2), n);
      if (predicted != actual) ++bad;
    }
    return bad;
  });
  report.enumerated = mod * mod;
  for (Int m : mismatches) report.mismatches += m;
  return report;
}

IndexReport index_enumeration_test(OrderKind kind, int n, Int p, int M) {
  if (quotient_level(kind, n) > M) {
    fail(ErrorCode::kPrecisionExhausted, "index enumeration needs quotient depth " +
                                             std::to_string(quotient_level(kind, n)) + " > M");
  }
  IndexReport report;
  report.label = std::string("[") + to_string(kind) + "^x:U^" + std::to_string(n) + "] p=" +
                 std::to_string(p);
  report.enumerated = enumerate_order_unit_index(kind, n, p);
  report.closed_form = order_unit_index(kind, n, p);
  const Int mod = ipow(p, quotient_level(kind, n));
  report.elements = kind == OrderKind::kJ ? mod * mod * mod * (mod / p) : mod * mod * mod * mod;
  return report;
}

IndexReport quad_order_index_test(int k, int r, int e, Int p) {
  if (k < 0 || r < 1 || (e != 1 && e != 2)) {
    fail(ErrorCode::kInvalidArgument, "quad order index needs k >= 0, r >= 1, e in {1,2}");
  }
  const TorusData torus = model_torus(e == 1 ? TorusKind::kUnramified : TorusKind::kRamified, p,
                                      PAdicContext::max_precision(p));
  const PAdicContext& ctx = torus.context;
  const Int mod = ipow(p, k + r);
  check_enumeration(p, 2 * (k + r), "quadratic order units");
  Int in_k = 0;
  Int in_kr = 0;
  for (Int c1 = 0; c1 < mod; ++c1) {
    for (Int c2 = 0; c2 < mod; ++c2) {
      Int norm = ctx.add(ctx.add(ctx.mul(c1, c1), ctx.mul(ctx.mul(c1, c2), torus.theta_trace)),
                         ctx.mul(ctx.mul(c2, c2), torus.theta_norm));
      if (!ctx.is_unit(norm)) continue;
      int v2 = residue_valuation(c2, p, k + r);
      if (v2 >= k) ++in_k;
      if (v2 >= k + r) ++in_kr;
    }
  }
  IndexReport report;
  report.label = "|L_" + std::to_string(k) + "^x/L_" + std::to_string(k + r) + "^x| e=" +
                 std::to_string(e) + " p=" + std::to_string(p);
  report.enumerated = in_k / in_kr;
  report.closed_form = quad_order_unit_index(k, r, e, p);
  report.elements = mod * mod;
  return report;
}

IndexReport norm_image_test(OrderKind kind, int n, Int p) {
  NormImage image = enumerate_norm_image(kind, n, p);
  IndexReport report;
  report.label = std::string("norm image level ") + to_string(kind) + " n=" + std::to_string(n) +
                 " p=" + std::to_string(p);
  // A non-full image cannot be a U_o^m and is reported as level -1.
  report.enumerated = image.full ? image.level : -1;
  // U_o^1 is the whole unit group at p = 2, so level 1 names the same subgroup as level 0.
  const int closed = norm_image_level(kind, n);
  report.closed_form = (p == 2 && closed == 1) ? 0 : closed;
  report.elements = image.elements;
  return report;
}

}  // namespace geomatch
