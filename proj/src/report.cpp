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

#include "geomatch/report.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

#include "geomatch/error.hpp"
#include "geomatch/version.hpp"

namespace geomatch {

namespace {

using Json = nlohmann::ordered_json;

// Rounded through the 12-digit text form so JSON and CSV agree.
double rounded(double x) { return std::stod(format_double(x)); }

Json normalization_ledger() {
  Json j;
  j["split_measure"] = "Vol(o^x x o^x) = 1";
  j["field_measure"] = "Vol(O_E^x) = 1";
  j["closed_form_values"] = "exclude the 1/[o^x : nu(U^n)] prefactor";
  j["assembly_local_factors"] = "include the 1/[o^x : nu(U^n)] prefactor";
  j["tail"] = "primes outside 2(t^2-4) and the level contribute the level-0 factor 1, absorbed into C(t)";
  j["sign_factor"] = "c = 1/2 when -1 lies in the group, else 1, from explicit membership tests";
  j["dpsi"] = "dPsi(t) = sum over classes of log x0 / sqrt(|t|-2), x0 = (u + v sqrt(D))/2";
  j["psi"] = "Psi(x) = c * sum over 2<|t|<=x^(1/2)+x^(-1/2) of 2 sqrt(|t|-2) dPsi(t)";
  j["pi"] = "pi(x) = c * number of primitive classes with x0^2 <= x";
  return j;
}

Json header(const ReportContext& ctx) {
  Json j;
  j["tool"] = "geomatch";
  j["version"] = kVersion;
  j["command"] = ctx.command;
  Json config = Json::object();
  for (const auto& [k, v] : ctx.config) config[k] = v;
  j["config"] = config;
  j["seed"] = ctx.seed;
  j["normalization"] = normalization_ledger();
  return j;
}

std::string rational_text(const Rational& r) { return to_string(r); }

class CsvWriter {
 public:
  void comment(const std::string& key, const std::string& value) { out_ << "# " << key << ": " << value << "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ",";
      out_ << csv_field(fields[i]);
    }
    out_ << "\r\n";
  }

  void blank() { out_ << "\r\n"; }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void csv_header(CsvWriter& w, const ReportContext& ctx) {
  const Json h = header(ctx);
  w.comment("tool", "geomatch");
  w.comment("version", kVersion);
  w.comment("command", ctx.command);
  for (const auto& [k, v] : ctx.config) w.comment("config." + k, v);
  w.comment("seed", std::to_string(ctx.seed));
  for (const auto& [k, v] : h["normalization"].items()) w.comment("normalization." + k, v.get<std::string>());
}

std::string i2s(Int v) { return std::to_string(v); }

Json suite_json(const SuiteResult& s) {
  Json j;
  j["name"] = s.name;
  j["checked"] = s.checked;
  j["failures"] = s.failures;
  j["pass"] = s.pass();
  j["failure_examples"] = s.failure_examples;
  return j;
}

void suite_csv(CsvWriter& w, const std::vector<SuiteResult>& suites) {
  w.row({"suite", "checked", "failures", "pass", "first_failure"});
  for (const SuiteResult& s : suites)
    w.row({s.name, i2s(s.checked), i2s(s.failures), s.pass() ? "true" : "false",
           s.failure_examples.empty() ? "" : s.failure_examples.front()});
}

Json coverage_json(const CoverageReport& r) {
  Json j;
  j["decomposition"] = to_string(r.decomposition);
  j["torus"] = to_string(r.torus_kind);
  j["p"] = r.p;
  j["M"] = r.M;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  j["pass"] = r.violations == 0;
  Json hist = Json::object();
  for (const auto& [k, v] : r.histogram) hist[std::to_string(k)] = v;
  j["histogram"] = hist;
  j["sides"] = {r.sides[0], r.sides[1]};
  j["identity_index"] = r.identity_index;
  j["examples"] = r.examples;
  return j;
}

void coverage_csv(CsvWriter& w, const std::vector<CoverageReport>& reports) {
  w.row({"decomposition", "torus", "p", "M", "samples", "seed", "violations", "near_side", "far_side",
         "identity_index"});
  for (const CoverageReport& r : reports)
    w.row({to_string(r.decomposition), to_string(r.torus_kind), i2s(r.p), std::to_string(r.M),
           i2s(r.samples), std::to_string(r.seed), i2s(r.violations), i2s(r.sides[0]), i2s(r.sides[1]),
           std::to_string(r.identity_index)});
}

Json spectrum_json(const SpectrumReport& s) {
  Json j;
  j["level"] = s.N;
  j["sign_factor"] = rational_text(gamma_sign_factor(s.N));
  // For N <= 2, gamma and -gamma can both be 1 mod N; both are summed, then halved.
  j["sign_pairs_summed_then_halved"] = s.N <= 2;
  Json traces = Json::array();
  for (const TraceRow& r : s.traces) {
    Json t;
    t["t"] = r.t;
    t["class_count_SL2"] = r.class_count;
    t["classes_in_level"] = r.classes_in_level;
    t["primitive_classes"] = r.primitive_classes;
    t["dpsi"] = rounded(r.dpsi);
    traces.push_back(t);
  }
  j["traces"] = traces;
  Json rows = Json::array();
  for (const PgtRow& r : s.rows) {
    Json x;
    x["x"] = rounded(r.x);
    x["psi"] = rounded(r.psi);
    x["psi_minus_x"] = rounded(r.psi_minus_x);
    x["x_pow_7_10"] = rounded(r.x_pow_7_10);
    x["pi"] = rounded(r.pi);
    x["li_x"] = rounded(r.li_x);
    x["pi_minus_li"] = rounded(r.pi_minus_li);
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

void spectrum_csv(CsvWriter& w, const SpectrumReport& s) {
  w.comment("level", std::to_string(s.N));
  w.comment("sign_factor", rational_text(gamma_sign_factor(s.N)));
  w.comment("sign_pairs_summed_then_halved", s.N <= 2 ? "true" : "false");
  w.row({"t", "class_count_SL2", "classes_in_level", "primitive_classes", "dpsi"});
  for (const TraceRow& r : s.traces)
    w.row({i2s(r.t), i2s(r.class_count), i2s(r.classes_in_level), i2s(r.primitive_classes), format_double(r.dpsi)});
  w.blank();
  w.row({"x", "psi", "psi_minus_x", "x_pow_7_10", "pi", "li_x", "pi_minus_li"});
  for (const PgtRow& r : s.rows)
    w.row({format_double(r.x), format_double(r.psi), format_double(r.psi_minus_x), format_double(r.x_pow_7_10),
           format_double(r.pi), format_double(r.li_x), format_double(r.pi_minus_li)});
}

Json relation_json(const RamifiedLevelData& data, const PsiRelationReport& r) {
  Json j;
  j["x"] = rounded(r.x);
  j["psi_D"] = rounded(r.psi_D);
  Json terms = Json::array();
  for (const PsiTerm& t : r.terms) {
    Json term;
    term["subset"] = t.subset;
    term["coefficient"] = rational_text(t.coefficient);
    term["psi"] = rounded(t.psi);
    term["mode"] = t.mode;
    term["contribution"] = rounded(t.contribution);
    terms.push_back(term);
  }
  j["terms"] = terms;
  j["error"] = rounded(r.error);
  j["bound_7_10"] = rounded(r.bound_7_10);
  j["ram"] = data.ram;
  Json exps = Json::object();
  for (const auto& [p, n] : data.exponents) exps[std::to_string(p)] = n;
  j["exponents"] = exps;
  j["coefficient_sum"] = rational_text(r.coefficient_sum);
  j["psi_D_local"] = rounded(r.psi_D_local);
  j["quaternion_side"] = quaternion_side_note();
  j["enumerated_terms_consistent"] = r.consistent;
  j["local_identity_exact"] = r.exact_match;
  Json dpsi = Json::array();
  for (const DpsiRelation& rel : r.traces) {
    Json row;
    row["t"] = rel.t;
    row["global_constant"] = rounded(rel.global_constant);
    row["lhs"] = rounded(rel.lhs);
    row["rhs"] = rounded(rel.rhs);
    row["exact_match"] = rel.exact_match;
    Json per = Json::array();
    for (const DpsiTerm& t : rel.terms) per.push_back(rounded(t.dpsi));
    row["term_dpsi"] = per;
    dpsi.push_back(row);
  }
  j["dpsi"] = dpsi;
  return j;
}

void relation_csv(CsvWriter& w, const PsiRelationReport& r) {
  w.row({"subset", "coefficient", "psi", "mode", "contribution"});
  for (const PsiTerm& t : r.terms)
    w.row({subset_label(t.subset), rational_text(t.coefficient), format_double(t.psi), t.mode,
           format_double(t.contribution)});
  w.row({"total", rational_text(r.coefficient_sum), format_double(r.psi_D), "", format_double(r.psi_D)});
  w.blank();
  std::vector<std::string> head{"t", "global_constant", "lhs", "rhs", "exact_match"};
  for (const PsiTerm& t : r.terms) head.push_back("dpsi_" + subset_label(t.subset));
  w.row(head);
  for (const DpsiRelation& rel : r.traces) {
    std::vector<std::string> row{i2s(rel.t), format_double(rel.global_constant), format_double(rel.lhs),
                                 format_double(rel.rhs), rel.exact_match ? "true" : "false"};
    for (const DpsiTerm& t : rel.terms) row.push_back(format_double(t.dpsi));
    w.row(row);
  }
}

std::string finish(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  fail(ErrorCode::kInvalidArgument, "unknown format '" + text + "' (expected json or csv)");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_suites(const ReportContext& ctx, const std::vector<SuiteResult>& suites, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    Json arr = Json::array();
    for (const SuiteResult& s : suites) arr.push_back(suite_json(s));
    j["suites"] = arr;
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  suite_csv(w, suites);
  return w.str();
}

std::string render_coverage(const ReportContext& ctx, const std::vector<CoverageReport>& reports, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    Json arr = Json::array();
    for (const CoverageReport& r : reports) arr.push_back(coverage_json(r));
    j["coverage"] = arr;
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  coverage_csv(w, reports);
  return w.str();
}

std::string render_classes(const ReportContext& ctx, int N, const std::vector<QuadFormClass>& classes,
                           const TraceRow& row, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    j["t"] = row.t;
    j["level"] = N;
    j["class_count_SL2"] = row.class_count;
    j["classes_in_level"] = row.classes_in_level;
    j["primitive_classes"] = row.primitive_classes;
    j["dpsi"] = rounded(row.dpsi);
    Json arr = Json::array();
    for (const QuadFormClass& c : classes) {
      const Splitting s = gamma_splitting(c, N);
      Json k;
      k["form"] = {c.form.a, c.form.b, c.form.c};
      k["content"] = c.content;
      k["gamma"] = c.gamma;
      k["gamma0"] = c.gamma0;
      k["pell"] = {{"delta", c.pell.delta}, {"u", c.pell.u.str()}, {"v", c.pell.v.str()}};
      k["power_index"] = c.power_index;
      k["log_x0"] = rounded(c.pell.log_unit());
      k["splitting"] = {{"count", s.count}, {"primitive_index", s.primitive_index}};
      arr.push_back(k);
    }
    j["classes"] = arr;
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  w.row({"A", "B", "C", "content", "gamma", "power_index", "pell_u", "pell_v", "log_x0", "count_in_level",
         "primitive_index"});
  for (const QuadFormClass& c : classes) {
    const Splitting s = gamma_splitting(c, N);
    const std::string gamma = "[[" + i2s(c.gamma[0]) + "," + i2s(c.gamma[1]) + "],[" + i2s(c.gamma[2]) + "," +
                              i2s(c.gamma[3]) + "]]";
    w.row({i2s(c.form.a), i2s(c.form.b), i2s(c.form.c), i2s(c.content), gamma, i2s(c.power_index),
           c.pell.u.str(), c.pell.v.str(), format_double(c.pell.log_unit()), i2s(s.count),
           i2s(s.primitive_index)});
  }
  return w.str();
}

std::string render_spectrum(const ReportContext& ctx, const SpectrumReport& report, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    j["spectrum"] = spectrum_json(report);
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  spectrum_csv(w, report);
  return w.str();
}

std::string render_relation(const ReportContext& ctx, const RamifiedLevelData& data,
                            const PsiRelationReport& report, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    j["relation"] = relation_json(data, report);
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  w.comment("quaternion_side", quaternion_side_note());
  relation_csv(w, report);
  return w.str();
}

std::string render_full(const ReportContext& ctx, const FullReport& report, Format format) {
  if (format == Format::kJson) {
    Json j = header(ctx);
    Json suites = Json::array();
    for (const SuiteResult& s : report.suites) suites.push_back(suite_json(s));
    j["suites"] = suites;
    Json cov = Json::array();
    for (const CoverageReport& r : report.coverage) cov.push_back(coverage_json(r));
    j["coverage"] = cov;
    j["spectrum"] = spectrum_json(report.spectrum);
    j["relation"] = relation_json(report.relation_data, report.relation);
    return finish(j);
  }
  CsvWriter w;
  csv_header(w, ctx);
  w.comment("section", "suites");
  suite_csv(w, report.suites);
  w.blank();
  w.comment("section", "coverage");
  coverage_csv(w, report.coverage);
  w.blank();
  w.comment("section", "spectrum");
  spectrum_csv(w, report.spectrum);
  w.blank();
  w.comment("section", "relation");
  w.comment("quaternion_side", quaternion_side_note());
  relation_csv(w, report.relation);
  return w.str();
}

}  // namespace geomatch
