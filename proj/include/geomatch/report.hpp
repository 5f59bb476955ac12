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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geomatch/assembly.hpp"
#include "geomatch/geodesics.hpp"
#include "geomatch/oracle.hpp"
#include "geomatch/suites.hpp"

namespace geomatch {

enum class Format { kJson, kCsv };

Format parse_format(const std::string& text);

/// Shared header of every report. Thread count is deliberately absent so the
/// bytes do not depend on it.
struct ReportContext {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed in order
  std::uint64_t seed = 0;
};

/// 12 significant digits, "%.12g".
std::string format_double(double x);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& text);

std::string render_suites(const ReportContext& ctx, const std::vector<SuiteResult>& suites, Format format);
std::string render_coverage(const ReportContext& ctx, const std::vector<CoverageReport>& reports,
                            Format format);
std::string render_classes(const ReportContext& ctx, int N, const std::vector<QuadFormClass>& classes,
                           const TraceRow& row, Format format);
std::string render_spectrum(const ReportContext& ctx, const SpectrumReport& report, Format format);
std::string render_relation(const ReportContext& ctx, const RamifiedLevelData& data,
                            const PsiRelationReport& report, Format format);

/// Everything the `report` command gathers.
struct FullReport {
  std::vector<SuiteResult> suites;
  std::vector<CoverageReport> coverage;
  SpectrumReport spectrum;
  RamifiedLevelData relation_data;
  PsiRelationReport relation;
};

std::string render_full(const ReportContext& ctx, const FullReport& report, Format format);

}  // namespace geomatch
