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

#include "doctest.h"
#include "geomatch/error.hpp"
#include "geomatch/oracle.hpp"
#include "geomatch/suites.hpp"

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

TorusData torus(TorusKind kind, Int p) { return model_torus(kind, p, PAdicContext::max_precision(p)); }

}  // namespace

TEST_CASE("oracle examples") {
  const RegularElement split = RegularElement::split(torus(TorusKind::kSplit, 2), 3, 1);
  CHECK(oracle_orbital({OrderKind::kM, 1, false}, split, 5).value == 6);
  CHECK(oracle_orbital({OrderKind::kM, 1, false}, split, 5).value == orbital_split_f(1, split).value);
  const RegularElement ram = RegularElement::field(torus(TorusKind::kRamified, 2), 3, 1);
  CHECK(oracle_orbital({OrderKind::kD, 1, false}, ram, 5).value == 3);
  const RegularElement far = RegularElement::field(torus(TorusKind::kUnramified, 3), 2, 1);
  CHECK(oracle_orbital({OrderKind::kM, 1, false}, far, 5).value == 0);
  CHECK(oracle_orbital({OrderKind::kJ, 0, false},
                       RegularElement::field(torus(TorusKind::kUnramified, 2), 1, 2), 6)
            .value == 6);
}

TEST_CASE("oracle refuses precision below the guard band") {
  const RegularElement split = RegularElement::split(torus(TorusKind::kSplit, 2), 3, 1);
  CHECK(code_of([&] { oracle_orbital({OrderKind::kM, 3, false}, split, 4); }) ==
        ErrorCode::kPrecisionExhausted);
  CHECK(code_of([] { local_oracle_suite(2, 3, 4); }) == ErrorCode::kPrecisionExhausted);
}

TEST_CASE("coverage examples") {
  const CoverageReport m = coset_coverage_test(Decomposition::kSplitM, TorusKind::kSplit, 2, 3, 10000, 1);
  CHECK(m.violations == 0);
  CHECK(m.identity_index == 0);
  const CoverageReport j = coset_coverage_test(Decomposition::kSplitJ, TorusKind::kSplit, 3, 2, 10000, 1);
  CHECK(j.violations == 0);
  CHECK(j.sides[0] > 0);
  CHECK(j.sides[1] > 0);
  CHECK(j.identity_index == 0);
  for (TorusKind kind : {TorusKind::kUnramified, TorusKind::kRamified})
    for (Decomposition d : {Decomposition::kNonsplitM, Decomposition::kNonsplitJ}) {
      const CoverageReport r = coset_coverage_test(d, kind, 2, 3, 2000, 3);
      CHECK(r.violations == 0);
      // The base embedding meets J only in o + p O_E, so the identity sits at r = 1 there.
      CHECK(r.identity_index == (d == Decomposition::kNonsplitM ? 0 : 1));
      Int total = 0;
      for (const auto& [index, hits] : r.histogram) total += hits;
      CHECK(total == r.samples);
    }
}

TEST_CASE("coverage is reproducible for a fixed seed") {
  const CoverageReport a = coset_coverage_test(Decomposition::kNonsplitJ, TorusKind::kRamified, 3, 2, 3000, 42);
  const CoverageReport b = coset_coverage_test(Decomposition::kNonsplitJ, TorusKind::kRamified, 3, 2, 3000, 42);
  CHECK(a.histogram == b.histogram);
}

TEST_CASE("intersection examples") {
  for (Int p : {2, 3}) {
    const TorusData u = torus(TorusKind::kUnramified, p);
    const TorusData e = torus(TorusKind::kRamified, p);
    CHECK(radical_intersection_test(OrderKind::kM, u, 1, 2, 5).pass());
    CHECK(radical_intersection_test(OrderKind::kM, e, 1, 2, 5).pass());
    CHECK(radical_intersection_test(OrderKind::kJ, u, 1, 1, 5).pass());
    CHECK(radical_intersection_test(OrderKind::kJ, e, 0, 1, 5).pass());
    const IntersectionReport none = radical_intersection_test(OrderKind::kJ, u, 0, 1, 5);
    CHECK_FALSE(none.embedding_found);
  }
  CHECK(code_of([] {
          radical_intersection_test(OrderKind::kM, torus(TorusKind::kUnramified, 2), 2, 3, 5);
        }) == ErrorCode::kPrecisionExhausted);
}

TEST_CASE("index examples") {
  const IndexReport m = index_enumeration_test(OrderKind::kM, 1, 2, 2);
  CHECK(m.enumerated == 6);
  CHECK(m.pass());
  const IndexReport j = index_enumeration_test(OrderKind::kJ, 3, 2, 3);
  CHECK(j.enumerated == 16);
  CHECK(j.pass());
  const IndexReport d = index_enumeration_test(OrderKind::kD, 2, 2, 3);
  CHECK(d.enumerated == 12);
  CHECK(d.pass());
  for (int k = 0; k <= 2; ++k)
    for (int r = 1; r <= 2; ++r)
      for (int e : {1, 2}) CHECK(quad_order_index_test(k, r, e, 3).pass());
  for (OrderKind kind : {OrderKind::kM, OrderKind::kJ, OrderKind::kD})
    for (int n = 0; n <= 4; ++n) CHECK(norm_image_test(kind, n, 2).pass());
}

TEST_CASE("enumeration size is bounded") {
  CHECK(code_of([] { enumerate_order_unit_index(OrderKind::kM, 6, 13); }) ==
        ErrorCode::kEnumerationTooLarge);
  CHECK(code_of([] { coset_coverage_test(Decomposition::kSplitM, TorusKind::kSplit, 7, 9, 10, 1); }) ==
        ErrorCode::kEnumerationTooLarge);
}

TEST_CASE("exact suites") {
  for (Int p : {2, 3}) {
    const SuiteResult oracle = local_oracle_suite(p, 2, 4);
    CHECK(oracle.pass());
    const SuiteResult index = index_suite(p, 3);
    CHECK(index.pass());
  }
  CHECK(intersection_suite(2, 5).pass());
}
