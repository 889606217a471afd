// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/symbol_json.hpp"

namespace hardylab {

using nlohmann::json;

const char* artifact_version() { return "0.3.0"; }

ReportSummary Report::summary() const {
  ReportSummary s;
  for (const CaseRecord& c : cases) {
    ++s.total;
    if (c.status == "pass") ++s.passed;
    else if (c.status == "undecidable") ++s.undecidable;
    else ++s.failed;
  }
  return s;
}

int exit_status(const Report& r) {
  const ReportSummary s = r.summary();
  if (s.failed > 0) return 1;
  if (s.undecidable > 0) return 3;
  return 0;
}

std::optional<ReportFormat> report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  return std::nullopt;
}

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

json config_to_json(const ReportConfig& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"grid", c.grid},
          {"seed", c.seed},
          {"tol_scale", c.tol_scale},
          {"instances", c.instances},
          {"timings", c.timings},
          {"tolerance",
           {{"identity", c.tolerance.identity},
            {"exact", c.tolerance.exact},
            {"certified", c.tolerance.certified},
            {"perturbed_idem", c.tolerance.perturbed_idem},
            {"schedule", "tol_scale * (10 * tails + 1e-10 * dim * max(1, sum of symbol l1 norms))"}}}};
}

ReportConfig config_from_json(const json& j) {
  ReportConfig c;
  c.n = j.at("n").get<int>();
  c.m = j.at("m").get<int>();
  c.grid = j.at("grid").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tol_scale = j.at("tol_scale").get<double>();
  c.instances = j.at("instances").get<int>();
  c.timings = j.at("timings").get<bool>();
  const json& t = j.at("tolerance");
  c.tolerance.identity = t.at("identity").get<double>();
  c.tolerance.exact = t.at("exact").get<double>();
  c.tolerance.certified = t.at("certified").get<double>();
  c.tolerance.perturbed_idem = t.at("perturbed_idem").get<double>();
  return c;
}

json case_to_json(const CaseRecord& c) {
  json j = {{"suite", c.suite},   {"check", c.check},     {"index", c.index},
            {"theorem", c.theorem}, {"family", c.family}, {"verdict", c.verdict},
            {"params", c.params}, {"tol", number(c.tol)}, {"status", c.status},
            {"reason", c.reason}};
  json res = json::object();
  for (const auto& [k, v] : c.residuals) res[k] = number(v);
  j["residuals"] = res;
  if (c.trace) j["trace"] = number(*c.trace);
  if (c.runtime_ms) j["runtime_ms"] = *c.runtime_ms;
  return j;
}

CaseRecord case_from_json(const json& j) {
  CaseRecord c;
  c.suite = j.at("suite").get<std::string>();
  c.check = j.at("check").get<std::string>();
  c.index = j.at("index").get<std::uint64_t>();
  c.theorem = j.at("theorem").get<std::string>();
  c.family = j.at("family").get<std::string>();
  c.verdict = j.at("verdict").get<std::string>();
  c.params = j.at("params");
  c.tol = number_from(j.at("tol"));
  c.status = j.at("status").get<std::string>();
  c.reason = j.at("reason").get<std::string>();
  for (const auto& [k, v] : j.at("residuals").items()) c.residuals[k] = number_from(v);
  if (j.contains("trace")) c.trace = number_from(j.at("trace"));
  if (j.contains("runtime_ms")) c.runtime_ms = j.at("runtime_ms").get<double>();
  return c;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

json report_to_json(const Report& r) {
  const ReportSummary s = r.summary();
  json cases = json::array();
  for (const CaseRecord& c : r.cases) cases.push_back(case_to_json(c));
  return {{"schema", r.schema},
          {"version", r.version},
          {"suite", r.suite},
          {"config", config_to_json(r.config)},
          {"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"undecidable", s.undecidable}}},
          {"cases", cases}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) fail(ErrorCode::parse, "unsupported report schema '" + r.schema + "'");
    r.version = j.at("version").get<std::string>();
    r.suite = j.at("suite").get<std::string>();
    r.config = config_from_json(j.at("config"));
    for (const json& c : j.at("cases")) r.cases.push_back(case_from_json(c));
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << "suite,check,index,theorem,family,verdict,status,tol,trace,runtime_ms,residuals,reason,params\n";
  for (const CaseRecord& c : r.cases) {
    std::string res;
    for (const auto& [k, v] : c.residuals) res += (res.empty() ? "" : ";") + k + "=" + fmt(v);
    os << quote(c.suite) << ',' << quote(c.check) << ',' << c.index << ',' << quote(c.theorem) << ','
       << quote(c.family) << ',' << quote(c.verdict) << ',' << c.status << ',' << fmt(c.tol) << ','
       << (c.trace ? fmt(*c.trace) : "") << ',' << (c.runtime_ms ? fmt(*c.runtime_ms) : "") << ',' << quote(res)
       << ',' << quote(c.reason) << ',' << quote(c.params.dump()) << '\n';
  }
  return os.str();
}

std::string emit_report(const Report& r, ReportFormat f) {
  return f == ReportFormat::json ? report_to_json(r).dump() + "\n" : report_to_csv(r);
}

void write_report(const Report& r, const std::string& path, ReportFormat f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << emit_report(r, f);
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Classification rendering

namespace {

void collect_blaschke(const SymbolExpr& e, std::vector<BlaschkeProduct>& out) {
  if (e.kind() == SymbolExpr::Kind::blaschke) {
    const BlaschkeProduct& b = e.blaschke();
    for (const BlaschkeProduct& seen : out)
      if (seen.zeros() == b.zeros()) return;
    out.push_back(b);
    return;
  }
  if (e.kind() == SymbolExpr::Kind::sum || e.kind() == SymbolExpr::Kind::product ||
      e.kind() == SymbolExpr::Kind::conjugate || e.kind() == SymbolExpr::Kind::scale)
    for (const SymbolExpr& c : e.children()) collect_blaschke(c, out);
}

json truncation_to_json(const CertifiedTruncation& t) {
  return {{"coeffs", laurent_to_json(t.poly)}, {"tail_l1", t.tail_l1}};
}

// theta as a zero list when it agrees with the input's only Blaschke product
// up to a unimodular factor.
std::optional<json> theta_as_blaschke(const CertifiedTruncation& theta, const std::vector<SymbolExpr>& inputs,
                                      double tol) {
  std::vector<BlaschkeProduct> found;
  for (const SymbolExpr& e : inputs) collect_blaschke(e, found);
  if (found.size() != 1 || theta.poly.empty() || theta.poly.min_freq() < 0) return std::nullopt;
  const BlaschkeProduct& b = found.front();
  LaurentPoly ref = expr_truncate(SymbolExpr::blaschke(b), theta.poly.max_freq() + 1).poly;
  LaurentPoly got = theta.poly;
  const cplx gb = gauge_fix(ref, tol);
  const cplx gt = gauge_fix(got, tol);
  if ((ref - got).max_abs() > tol) return std::nullopt;
  // theta = conj(gt) * gb * b
  return symbol_to_json(SymbolExpr::blaschke(BlaschkeProduct(b.zeros(), std::conj(gt) * gb * b.unimodular())));
}

}  // namespace

json classification_to_json(const ClassificationResult& r, const std::vector<SymbolExpr>& inputs) {
  json j;
  j["tag"] = to_string(r.tag);
  j["subcase"] = r.subcase;
  j["reason"] = r.reason;
  j["window"] = r.window;
  j["tol"] = number(r.tol);
  j["tails"] = number(r.tails);
  j["constants"] = json::object();
  for (const auto& [k, c] : r.constants) j["constants"][k] = complex_to_json(c);
  j["residuals"] = json::object();
  for (const auto& [k, v] : r.residuals) j["residuals"][k] = number(v);
  j["symbols"] = json::object();
  for (const auto& [k, s] : r.symbols) {
    std::optional<json> zeros;
    if (k == "theta") zeros = theta_as_blaschke(s, inputs, std::max(r.tol, 1e-12));
    j["symbols"][k] = zeros ? *zeros : truncation_to_json(s);
  }
  if (r.projection) {
    const ProjectionResiduals& p = *r.projection;
    j["projection"] = {{"sa", number(p.sa)},
                       {"idem", number(p.idem)},
                       {"trace", complex_to_json(p.trace)},
                       {"norm_est", number(p.norm_est)},
                       {"frobenius", number(p.frobenius)},
                       {"window", p.window}};
  } else {
    j["projection"] = nullptr;
  }
  return j;
}

}  // namespace hardylab
