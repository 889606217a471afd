// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>
#include <string>

#include "hardylab/hardylab.h"

using nlohmann::json;

namespace {

std::string take(char* p) {
  std::string s = p ? p : "";
  hl_string_free(p);
  return s;
}

json witness(const char* theorem, const char* family, const char* perturb = "") {
  char* out = nullptr;
  REQUIRE(hl_witness_json(theorem, 3, 1, family, perturb, 1.1, &out) == HL_OK);
  return json::parse(take(out));
}

std::string classify(const char* cmd, const json& symbols, double tol, double tail, hl_status* status) {
  hl_classification* c = nullptr;
  *status = hl_classify(cmd, symbols.dump().c_str(), 64, tol, 1.0, tail, &c);
  if (*status != HL_OK) return {};
  std::string tag = hl_classification_tag(c);
  char* text = nullptr;
  CHECK(hl_classification_json(c, &text) == HL_OK);
  CHECK(json::parse(take(text))["tag"] == tag);
  hl_classification_free(c);
  return tag;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(hl_version()) == "0.3.0");
  CHECK(std::string(hl_status_name(HL_OK)) == "ok");
  CHECK(std::string(hl_status_name(HL_ERR_UNDECIDABLE)) == "undecidable");
  hl_string_free(nullptr);
}

TEST_CASE("configuration validation and suite runs") {
  hl_config* c = nullptr;
  REQUIRE(hl_config_create(&c) == HL_OK);
  CHECK(hl_config_set_n(c, 4) == HL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(hl_last_error()).size() > 0);
  CHECK(hl_config_set_tol_scale(c, 0.0) == HL_ERR_INVALID_ARGUMENT);
  CHECK(hl_config_set_n(c, 32) == HL_OK);
  CHECK(hl_config_set_instances(c, 4) == HL_OK);
  CHECK(hl_config_set_seed(c, 9) == HL_OK);

  bool has_all = false;
  for (size_t i = 0; i < hl_suite_count(); ++i) has_all |= std::string(hl_suite_name(i)) == "all";
  CHECK(has_all);
  CHECK(hl_suite_name(hl_suite_count()) == nullptr);

  hl_report* r = nullptr;
  CHECK(hl_run_suite("bogus", c, &r) == HL_ERR_UNKNOWN_SUITE);
  CHECK(r == nullptr);
  REQUIRE(hl_run_suite("main1", c, &r) == HL_OK);
  int total = 0, passed = 0, failed = 0, undecidable = 0;
  REQUIRE(hl_report_summary(r, &total, &passed, &failed, &undecidable) == HL_OK);
  CHECK(total > 0);
  CHECK(passed == total);
  CHECK(hl_report_exit_status(r) == 0);

  char* text = nullptr;
  REQUIRE(hl_report_emit(r, "json", &text) == HL_OK);
  const std::string first = take(text);
  CHECK(json::parse(first)["summary"]["total"] == total);
  CHECK(hl_report_emit(r, "xml", &text) == HL_ERR_INVALID_ARGUMENT);

  hl_report* back = nullptr;
  REQUIRE(hl_report_from_json(first.c_str(), &back) == HL_OK);
  REQUIRE(hl_report_emit(back, "json", &text) == HL_OK);
  CHECK(take(text) == first);
  CHECK(hl_report_from_json("{not json", &back) == HL_ERR_PARSE);

  CHECK(hl_report_write(r, "/nonexistent-dir/r.json", "json") == HL_ERR_IO);
  REQUIRE(hl_report_emit(r, "csv", &text) == HL_OK);
  CHECK(take(text).rfind("suite,check,", 0) == 0);

  hl_report_free(back);
  hl_report_free(r);
  hl_config_free(c);
}

TEST_CASE("classification through the C boundary") {
  hl_status s = HL_OK;
  const json w = witness("main1", "blaschke");
  CHECK(classify("product", w["symbols"], 0.0, 0.0, &s) == "main1");
  CHECK(s == HL_OK);
  CHECK(classify("product", witness("main1", "blaschke", "a")["symbols"], 0.0, 0.0, &s) == "none");

  CHECK(classify("hankel", witness("thm2H", "monomial")["symbols"], 0.0, 0.0, &s) == "thm2H");

  classify("product", w["symbols"], 1e-6, 1e-3, &s);
  CHECK(s == HL_ERR_UNDECIDABLE);
  classify("product", json::parse(R"({"f":{"kind":"wavelet"}})"), 0.0, 0.0, &s);
  CHECK(s == HL_ERR_PARSE);
  hl_classification* c = nullptr;
  CHECK(hl_classify("product", "{]", 32, 0.0, 1.0, 0.0, &c) == HL_ERR_PARSE);
  CHECK(hl_classify("sideways", "{}", 32, 0.0, 1.0, 0.0, &c) == HL_ERR_INVALID_ARGUMENT);
  CHECK(hl_classify(nullptr, "{}", 32, 0.0, 1.0, 0.0, &c) == HL_ERR_INVALID_ARGUMENT);

  char* out = nullptr;
  CHECK(hl_witness_json("main9", 0, 0, "", "", 1.1, &out) != HL_OK);
}
