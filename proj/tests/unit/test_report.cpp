// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/report.hpp"
#include "hardylab/symbol_json.hpp"
#include "hardylab/witness.hpp"

using namespace hardylab;
using nlohmann::json;

namespace {

ReportConfig small() {
  ReportConfig c;
  c.n = 32;
  c.m = 40;
  c.instances = 6;
  c.seed = 5;
  return c;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

void find_zeros(const json& j, std::vector<json>& out) {
  if (j.is_object()) {
    if (j.value("kind", "") == "blaschke") out.push_back(j.at("zeros"));
    for (const auto& [k, v] : j.items()) find_zeros(v, out);
  } else if (j.is_array()) {
    for (const json& v : j) find_zeros(v, out);
  }
}

}  // namespace

TEST_CASE("every suite runs and passes at small sizes") {
  for (const std::string& name : suite_names()) {
    if (name == "all") continue;
    const Report r = run_suite(name, small());
    INFO(name);
    CHECK(r.suite == name);
    CHECK(r.schema == std::string(kReportSchema));
    CHECK(r.version == std::string(artifact_version()));
    CHECK(r.summary().total > 0);
    CHECK(r.summary().passed == r.summary().total);
    CHECK(exit_status(r) == 0);
    for (const CaseRecord& c : r.cases) CHECK_FALSE(c.runtime_ms.has_value());
  }
  CHECK_THROWS_AS(run_suite("nope", small()), Error);
  ReportConfig bad = small();
  bad.n = 4;
  CHECK_THROWS_AS(run_suite("kz", bad), Error);
}

TEST_CASE("serialization round trips and is deterministic") {
  ReportConfig c = small();
  const Report a = run_suite("main1", c);
  c.threads = 3;
  const Report b = run_suite("main1", c);
  CHECK(emit_report(a, ReportFormat::json) == emit_report(b, ReportFormat::json));
  CHECK(emit_report(a, ReportFormat::csv) == emit_report(b, ReportFormat::csv));

  const Report back = report_from_json(json::parse(emit_report(a, ReportFormat::json)));
  CHECK(back.config == a.config);
  CHECK(back.cases.size() == a.cases.size());
  CHECK(emit_report(back, ReportFormat::json) == emit_report(a, ReportFormat::json));

  const std::string csv = report_to_csv(a);
  CHECK(lines(csv) == a.cases.size() + 1);
  CHECK(csv.rfind("suite,check,index,", 0) == 0);

  json j = report_to_json(a);
  CHECK(j["summary"]["total"] == a.cases.size());
  j["schema"] = "other/9";
  CHECK_THROWS_AS(report_from_json(j), Error);
  CHECK_THROWS_AS(report_from_json(json::object()), Error);

  c.timings = true;
  const Report timed = run_suite("kz", c);
  for (const CaseRecord& r : timed.cases) CHECK(r.runtime_ms.has_value());
}

TEST_CASE("exit status mapping") {
  Report r;
  CaseRecord c;
  c.status = "pass";
  r.cases.push_back(c);
  CHECK(exit_status(r) == 0);
  c.status = "undecidable";
  r.cases.push_back(c);
  CHECK(exit_status(r) == 3);
  c.status = "fail";
  r.cases.push_back(c);
  CHECK(exit_status(r) == 1);
  CHECK(r.summary() == ReportSummary{3, 1, 1, 1});
  CHECK(report_format_from_string("csv") == ReportFormat::csv);
  CHECK_FALSE(report_format_from_string("xml"));
}

TEST_CASE("writing reports") {
  const Report r = run_suite("kz", small());
  const auto path = std::filesystem::temp_directory_path() / "hardylab_report_test.json";
  write_report(r, path.string(), ReportFormat::json);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == emit_report(r, ReportFormat::json));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_report(r, "/nonexistent-dir/x.json", ReportFormat::json), Error);
}

TEST_CASE("classification output names theta by its zeros") {
  WitnessSpec s;
  s.theorem = TheoremTag::thm2H;
  s.family = "blaschke";
  s.seed = 11;
  for (std::uint64_t i = 0; i < 4; ++i) {
    s.index = i;
    const Witness w = make_case(s);
    const ClassificationResult r = classify_witness(w, 64, 0.0);
    REQUIRE(r.tag == TheoremTag::thm2H);
    std::vector<SymbolExpr> inputs;
    for (const auto& [k, e] : w.symbols) inputs.push_back(e);
    const json out = classification_to_json(r, inputs);
    CHECK(out["tag"] == "thm2H");
    const json& theta = out["symbols"]["theta"];
    REQUIRE(theta.value("kind", "") == "blaschke");
    std::vector<json> in_zeros;
    for (const SymbolExpr& e : inputs) find_zeros(symbol_to_json(e), in_zeros);
    REQUIRE_FALSE(in_zeros.empty());
    CHECK(theta["zeros"] == in_zeros.front());
    CHECK(std::abs(std::abs(complex_from_json(theta["unimodular"])) - 1.0) < 1e-12);
  }
}
