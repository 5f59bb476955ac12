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

#ifndef GEOMATCH_GEOMATCH_C_H_
#define GEOMATCH_GEOMATCH_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GEOMATCH_BUILDING_LIBRARY)
#define GM_API __attribute__((visibility("default")))
#else
#define GM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes for the command-line tool. */
typedef enum gm_status {
  GM_OK = 0,
  GM_VIOLATION = 1,  /* a checked identity failed; the report is still produced */
  GM_PRECISION = 2,  /* p-adic precision exhausted */
  GM_SIZE = 3,       /* enumeration too large */
  GM_USAGE = 64,     /* invalid parameters */
  GM_INTERNAL = 70
} gm_status;

typedef struct gm_context gm_context;
typedef struct gm_report gm_report;

GM_API const char* gm_version(void);
GM_API const char* gm_status_string(gm_status status);

GM_API gm_context* gm_context_new(void);
GM_API void gm_context_free(gm_context* ctx);

/* Seed for every sampled quantity; recorded in each report header. */
GM_API gm_status gm_context_set_seed(gm_context* ctx, uint64_t seed);
/* "json" or "csv". */
GM_API gm_status gm_context_set_format(gm_context* ctx, const char* format);
/* Worker count for the process; 0 restores the default. */
GM_API gm_status gm_context_set_threads(gm_context* ctx, unsigned threads);
/* Message for the last non-OK status on this context, or "". */
GM_API const char* gm_context_last_error(const gm_context* ctx);

/* Closed forms against the brute-force oracle. p in {2,3,5}, n_max <= 6. */
GM_API gm_status gm_verify_local(gm_context* ctx, int64_t p, int n_max, int precision, gm_report** out);

/* Coefficient identity, split vanishing and field matching for n <= n_max. */
GM_API gm_status gm_verify_matching(gm_context* ctx, int n_max, gm_report** out);

/* Double-coset coverage for every decomposition at (p, precision). */
GM_API gm_status gm_coverage(gm_context* ctx, int64_t p, int precision, int64_t samples, gm_report** out);

/* SL_2(Z)-classes of trace t with their splitting into Gamma(level). */
GM_API gm_status gm_classes(gm_context* ctx, int64_t t, int level, gm_report** out);

/* dPsi rows and the Psi / pi table on a geometric grid of `points` values up to x_max. */
GM_API gm_status gm_spectrum(gm_context* ctx, int level, double x_max, int points, gm_report** out);

/* Subset decomposition of Psi for the quaternion group of (ram, exponents). */
GM_API gm_status gm_relation(gm_context* ctx, const int64_t* ram, size_t ram_count,
                             const int64_t* exponent_primes, const int* exponent_values,
                             size_t exponent_count, double x_max, gm_report** out);

/* Exact suites, coverage, spectrum and relation in one document. */
GM_API gm_status gm_full_report(gm_context* ctx, gm_report** out);

GM_API const char* gm_report_text(const gm_report* report);
GM_API size_t gm_report_size(const gm_report* report);
GM_API void gm_report_free(gm_report* report);

#ifdef __cplusplus
}
#endif

#endif /* GEOMATCH_GEOMATCH_C_H_ */
