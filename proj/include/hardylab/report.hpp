// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/projection_lab.hpp"
#include "hardylab/symbol.hpp"

namespace hardylab {

inline constexpr const char* kReportSchema = "hardylab-report/1";

const char* artifact_version();

/// Fixed per-check tolerances before tol_scale is applied.
struct ToleranceConfig {
  double identity = 1e-10;  // relative to the product of symbol l1 norms
  double exact = 1e-8;      // band-limited witnesses
  double certified = 1e-6;  // Blaschke-backed witnesses
  double perturbed_idem = 0.05;
  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct ReportConfig {
  int n = 64;
  int m = 72;  // Hankel codomain default N + 8; sections size themselves by reach
  int grid = 256;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  int instances = 0;  // 0 selects each suite's default count
  bool timings = false;
  int threads = 0;  // 0 uses the hardware concurrency; never recorded
  ToleranceConfig tolerance;

  friend bool operator==(const ReportConfig& a, const ReportConfig& b) {
    return a.n == b.n && a.m == b.m && a.grid == b.grid && a.seed == b.seed && a.tol_scale == b.tol_scale &&
           a.instances == b.instances && a.timings == b.timings && a.tolerance == b.tolerance;
  }
};

struct CaseRecord {
  std::string suite;
  std::string check;  // what was verified, e.g. "semicommutator" or "main1_perturbed"
  std::uint64_t index = 0;
  std::string theorem;  // tag the inputs were built for, or empty
  std::string family;
  std::string verdict;  // classifier output or check outcome
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, double> residuals;
  std::optional<double> trace;
  double tol = 0.0;
  std::string status;  // "pass", "fail" or "undecidable"
  std::string reason;
  std::optional<double> runtime_ms;

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

struct ReportSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int undecidable = 0;
  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string version;
  std::string suite;
  ReportConfig config;
  std::vector<CaseRecord> cases;

  ReportSummary summary() const;
  friend bool operator==(const Report&, const Report&) = default;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite (or "all"). Instances run in parallel and are gathered
/// in index order, so the report does not depend on scheduling.
Report run_suite(const std::string& suite, const ReportConfig& config);

/// 0 all pass, 1 any failure, 3 undecidable cases but no failure.
int exit_status(const Report& r);

enum class ReportFormat { json, csv };
std::optional<ReportFormat> report_format_from_string(const std::string& s);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// One header line plus one line per case.
std::string report_to_csv(const Report& r);
std::string emit_report(const Report& r, ReportFormat f);
void write_report(const Report& r, const std::string& path, ReportFormat f);

/// Renders a classification. When inputs contain exactly one Blaschke product
/// and the recovered theta matches it, theta is written as its zero list.
nlohmann::json classification_to_json(const ClassificationResult& r, const std::vector<SymbolExpr>& inputs = {});

}  // namespace hardylab
