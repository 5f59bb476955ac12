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

#include <string>

#include "doctest.h"
#include "geomatch/geomatch_c.h"
#include "json.hpp"

namespace {

struct Context {
  gm_context* ctx = gm_context_new();
  ~Context() { gm_context_free(ctx); }
};

std::string take(gm_report* report) {
  REQUIRE(report != nullptr);
  std::string text(gm_report_text(report), gm_report_size(report));
  gm_report_free(report);
  return text;
}

}  // namespace

TEST_CASE("context lifecycle") {
  CHECK(std::string(gm_version()) == "0.1.0");
  CHECK(std::string(gm_status_string(GM_PRECISION)).size() > 0);
  Context c;
  REQUIRE(c.ctx != nullptr);
  CHECK(gm_context_set_seed(c.ctx, 5) == GM_OK);
  CHECK(gm_context_set_format(c.ctx, "csv") == GM_OK);
  CHECK(gm_context_set_format(c.ctx, "yaml") == GM_USAGE);
  CHECK(std::string(gm_context_last_error(c.ctx)).size() > 0);
  CHECK(gm_context_set_seed(nullptr, 1) == GM_USAGE);
  gm_context_free(nullptr);
  gm_report_free(nullptr);
}

TEST_CASE("status codes") {
  Context c;
  gm_report* out = nullptr;
  CHECK(gm_verify_local(c.ctx, 7, 9, 5, &out) == GM_USAGE);
  CHECK(out == nullptr);
  CHECK(gm_verify_local(c.ctx, 2, 3, 2, &out) == GM_PRECISION);
  CHECK(std::string(gm_context_last_error(c.ctx)).find("precision") != std::string::npos);
  const int64_t odd[] = {2};
  CHECK(gm_relation(c.ctx, odd, 1, nullptr, nullptr, 0, 5000, &out) == GM_USAGE);
  CHECK(gm_spectrum(c.ctx, 7, 1000, 10, &out) == GM_USAGE);
  CHECK(gm_classes(c.ctx, 2, 1, &out) == GM_USAGE);
  CHECK(gm_classes(c.ctx, 10, 1, nullptr) == GM_USAGE);
  CHECK(gm_coverage(c.ctx, 13, 9, 10, &out) == GM_USAGE);
}

TEST_CASE("report contents") {
  Context c;
  gm_report* out = nullptr;
  REQUIRE(gm_classes(c.ctx, 10, 1, &out) == GM_OK);
  const auto j = nlohmann::ordered_json::parse(take(out));
  CHECK(j["command"] == "classes");
  CHECK(j["normalization"].is_object());

  REQUIRE(gm_verify_local(c.ctx, 2, 2, 4, &out) == GM_OK);
  const auto local = nlohmann::ordered_json::parse(take(out));
  for (const auto& suite : local["suites"]) CHECK(suite["pass"] == true);

  const int64_t ram[] = {2, 3};
  const int64_t primes[] = {2, 3};
  const int exps[] = {0, 0};
  REQUIRE(gm_relation(c.ctx, ram, 2, primes, exps, 2, 2000, &out) == GM_OK);
  const auto rel = nlohmann::ordered_json::parse(take(out));
  double sum = 0.0;
  for (const auto& term : rel["relation"]["terms"]) sum += std::stod(term["coefficient"].get<std::string>());
  CHECK(sum == 1.0);
  CHECK(rel["relation"]["coefficient_sum"] == "1");

  CHECK(gm_context_set_format(c.ctx, "csv") == GM_OK);
  REQUIRE(gm_spectrum(c.ctx, 1, 1000, 5, &out) == GM_OK);
  CHECK(take(out).rfind("# tool: geomatch", 0) == 0);
}

TEST_CASE("output bytes do not depend on the thread count") {
  std::string runs[2];
  for (unsigned threads : {1u, 4u}) {
    Context c;
    gm_context_set_seed(c.ctx, 99);
    gm_context_set_threads(c.ctx, threads);
    gm_report* out = nullptr;
    REQUIRE(gm_spectrum(c.ctx, 3, 20000, 12, &out) == GM_OK);
    std::string text = take(out);
    REQUIRE(gm_coverage(c.ctx, 2, 3, 5000, &out) == GM_OK);
    text += take(out);
    runs[threads == 1 ? 0 : 1] = text;
  }
  {
    Context reset;
    gm_context_set_threads(reset.ctx, 0);
  }
  CHECK(runs[0] == runs[1]);
}
