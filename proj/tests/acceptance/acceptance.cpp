// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion. Each criterion reruns the
// relevant suite and re-judges its records against the stated thresholds,
// recomputing what can be recomputed without the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "../unit/oracle.hpp"
#include "hardylab/report.hpp"
#include "hardylab/symbol_json.hpp"

using namespace hardylab;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

struct Timed {
  Report report;
  double seconds = 0.0;
};

Timed timed_run(const std::string& suite, const ReportConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Timed t{run_suite(suite, cfg), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

std::vector<const CaseRecord*> with_check(const Report& r, const std::string& check) {
  std::vector<const CaseRecord*> out;
  for (const CaseRecord& c : r.cases)
    if (c.check == check) out.push_back(&c);
  return out;
}

double res(const CaseRecord& c, const std::string& key) {
  const auto it = c.residuals.find(key);
  return it == c.residuals.end() ? std::nan("") : it->second;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.empty() ? "" : " -- ",
              o.detail.c_str());
  std::fflush(stdout);
}

ReportConfig config(int n) {
  ReportConfig c;
  c.n = n;
  c.m = n + 8;
  c.seed = 1;
  return c;
}

// Trace the witness generator promises: deg theta, or N - deg theta for range theta H^2.
double promised_trace(const CaseRecord& c, int n) {
  const json& e = c.params.at("expected");
  const double deg = e.at("degree").get<double>();
  return e.at("complement").get<bool>() ? n - deg : deg;
}

void sweep(Outcome& o, const Report& r, const std::string& theorem, int n) {
  const auto good = with_check(r, theorem), bad = with_check(r, theorem + "_perturbed");
  o.require(good.size() == 100, theorem + " witnesses: " + std::to_string(good.size()));
  o.require(bad.size() == 100, "perturbed witnesses: " + std::to_string(bad.size()));
  for (const CaseRecord* c : good) {
    const bool exact = c->params.at("band_limited").get<bool>();
    const double tol = exact ? 1e-8 : 1e-6;
    o.require(c->status == "pass" && c->verdict.rfind(theorem, 0) == 0,
              theorem + " #" + std::to_string(c->index) + " classified " + c->verdict);
    o.require(res(*c, "sa") <= tol && res(*c, "idem") <= tol,
              "#" + std::to_string(c->index) + " projection residual above " + num(tol));
    o.require(c->trace && std::abs(*c->trace - promised_trace(*c, n)) <= tol,
              "#" + std::to_string(c->index) + " trace off by more than " + num(tol));
  }
  for (const CaseRecord* c : bad) {
    o.require(c->verdict == "none", "perturbed #" + std::to_string(c->index) + " accepted as " + c->verdict);
    o.require(res(*c, "idem") >= 0.05, "perturbed #" + std::to_string(c->index) + " idem " + num(res(*c, "idem")));
  }
}

cplx param(const CaseRecord& c, const std::string& k) { return complex_from_json(c.params.at("params").at(k)); }

}  // namespace

int main() {
  report(1, "identity suite at N = 32, 500 pairs, < 10 s", [] {
    Outcome o;
    const Timed t = timed_run("identities", config(32));
    const auto pairs = with_check(t.report, "pair_identities");
    o.require(pairs.size() == 500, "pairs: " + std::to_string(pairs.size()));
    double worst = 0.0;
    for (const CaseRecord* c : pairs) {
      for (const char* k : {"semicommutator", "rank1s", "brown_halmos", "v_squared", "vpv", "vhv"}) {
        const double v = res(*c, k);
        o.require(std::isfinite(v), std::string("missing residual ") + k);
        worst = std::max(worst, v);
      }
      o.require(c->params.at("n") == 32, "window is not N = 32");
    }
    o.require(worst <= 1e-10, "worst relative residual " + num(worst));
    o.require(t.seconds < 10.0, "runtime " + num(t.seconds) + " s");
    if (o.ok) o.detail = "worst " + num(worst) + ", " + num(t.seconds) + " s";
    return o;
  });

  report(2, "rank-algebra oracle equivalence, 10^4 quadruples, < 5 s", [] {
    Outcome o;
    const Timed t = timed_run("rank-lemmas", config(64));
    const auto quads = with_check(t.report, "quadruple");
    o.require(quads.size() == 10000, "quadruples: " + std::to_string(quads.size()));
    int band = 0;
    for (const CaseRecord* c : quads) {
      o.require(c->status == "pass", "quadruple #" + std::to_string(c->index) + ": " + c->reason);
      if (c->verdict.rfind("ill_conditioned", 0) == 0) ++band;
    }
    o.require(t.seconds < 5.0, "runtime " + num(t.seconds) + " s");
    if (o.ok) o.detail = std::to_string(band) + " in conditioning band, " + num(t.seconds) + " s";
    return o;
  });

  report(3, "main1 sweep at N = 64, 100 + 100 perturbed, < 30 s", [] {
    Outcome o;
    const Timed t = timed_run("main1", config(64));
    sweep(o, t.report, "main1", 64);
    o.require(t.seconds < 30.0, "runtime " + num(t.seconds) + " s");
    if (o.ok) o.detail = num(t.seconds) + " s";
    return o;
  });

  report(4, "thm2H sweep with theta recovery", [] {
    Outcome o;
    const Timed t = timed_run("thm2H", config(64));
    sweep(o, t.report, "thm2H", 64);
    for (const CaseRecord* c : with_check(t.report, "thm2H")) {
      const double err = res(*c, "theta_error");
      const double budget = c->params.at("band_limited").get<bool>() ? 1e-8 : res(*c, "theta_budget");
      o.require(err <= budget, "#" + std::to_string(c->index) + " theta error " + num(err));
    }
    return o;
  });

  report(5, "main3 case 1, gap family, case 2", [] {
    Outcome o;
    const Timed t = timed_run("main3", config(64));
    const auto c1 = with_check(t.report, "main3_case1"), gap = with_check(t.report, "main3_case1_gap"),
               c2 = with_check(t.report, "main3_case2");
    o.require(c1.size() == 100 && gap.size() == 100 && c2.size() == 100, "family sizes");
    for (const CaseRecord* c : c1) {
      o.require(c->status == "pass", "case 1 #" + std::to_string(c->index) + ": " + c->reason);
      o.require(std::abs(std::norm(param(*c, "a")) - std::norm(param(*c, "b")) - 1.0) <= 1e-12,
                "case 1 witness off the |a|^2 - |b|^2 = 1 family");
      o.require(res(*c, "model_space") <= c->tol, "case 1 model-space residual");
    }
    for (const CaseRecord* c : gap) {
      // params hold the generator's b; the perturbation rescales it.
      const json& p = c->params.at("perturbation");
      o.require(p.at("parameter") == "b", "gap witness perturbs " + p.at("parameter").dump());
      const double factor = p.at("factor").get<double>();
      o.require(std::abs(std::norm(param(*c, "a")) - factor * factor * std::norm(param(*c, "b")) - 1.2) <= 1e-9,
                "gap witness #" + std::to_string(c->index) + " not at 1.2");
      o.require(c->verdict == "none", "gap #" + std::to_string(c->index) + " accepted");
    }
    std::set<std::string> hs;
    for (const CaseRecord* c : c2) {
      o.require(c->status == "pass", "case 2 #" + std::to_string(c->index) + ": " + c->reason);
      for (const char* k : {"sa", "idem", "qq_identity", "h_error"})
        o.require(res(*c, k) <= 1e-8, std::string("case 2 ") + k + " " + num(res(*c, k)));
      hs.insert(c->params.at("expected").at("h").dump());
    }
    o.require(hs.size() <= 5, "h drawn from " + std::to_string(hs.size()) + " grid points");
    return o;
  });

  report(6, "Fejer-Riesz oracle for 1 + (z^2 + zbar^2)/4", [] {
    Outcome o;
    ReportConfig cfg = config(64);
    const Timed t = timed_run("main3", cfg);
    const auto fr = with_check(t.report, "fejer_riesz_gamma");
    o.require(fr.size() == 1, "missing Fejer-Riesz case");
    if (!o.ok) return o;
    const LaurentPoly v = laurent_from_json(fr.front()->params.at("v"));
    const double gamma = 2.0 - std::sqrt(3.0);
    const cplx ratio = v.coeff(2) / v.coeff(0);
    o.require(std::abs(ratio - gamma) <= 1e-12, "gamma error " + num(std::abs(ratio - gamma)));
    o.require(std::abs(gamma * gamma - 4 * gamma + 1) <= 1e-15, "reference gamma");
    // sup over a fine grid of | |v|^2 - w |, evaluated directly.
    double sup = 0.0;
    for (int j = 0; j < 4096; ++j) {
      const double th = 2 * std::numbers::pi * j / 4096;
      cplx vz = 0.0;
      for (int k = v.min_freq(); k <= v.max_freq(); ++k) vz += v.coeff(k) * std::polar(1.0, k * th);
      sup = std::max(sup, std::abs(std::norm(vz) - (1.0 + 0.5 * std::cos(2 * th))));
    }
    o.require(sup <= 1e-10, "sup residual " + num(sup));
    if (o.ok) o.detail = "gamma error " + num(std::abs(ratio - gamma)) + ", sup " + num(sup);
    return o;
  });

  report(7, "kz identity at z in {0, 0.3, 0.5+0.2i, 0.8}", [] {
    Outcome o;
    const Timed t = timed_run("kz", config(64));
    const auto pts = with_check(t.report, "kz_identity");
    o.require(pts.size() == 4, "points: " + std::to_string(pts.size()));
    std::set<std::string> flags;
    for (const CaseRecord* c : pts) {
      o.require(c->params.at("n") == 128, "window is not N = 128");
      const double r = std::min(res(*c, "as_written"), res(*c, "swapped"));
      o.require(c->status == "pass" && r <= c->tol, "z #" + std::to_string(c->index) + " residual " + num(r));
      flags.insert(c->verdict);
    }
    const auto cons = with_check(t.report, "kz_ordering_consistency");
    o.require(cons.size() == 1 && cons.front()->status == "pass", "ordering flag inconsistent");
    o.require(flags.size() == 1, "flags differ across z");
    if (o.ok) o.detail = "ordering flag " + *flags.begin();
    return o;
  });

  report(8, "known values are exact", [] {
    Outcome o;
    const Timed t = timed_run("identities", config(32));
    int known = 0;
    for (const CaseRecord& c : t.report.cases) {
      if (c.family != "known_value") continue;
      ++known;
      o.require(c.status == "pass" && res(c, "defect") == 0.0, c.check + " defect " + num(res(c, "defect")));
    }
    o.require(known == 11, "known-value cases: " + std::to_string(known));
    // Independent matrices built entry by entry.
    const int n = 16;
    const auto z = LaurentPoly::monomial(1), zb = LaurentPoly::monomial(-1);
    Eigen::MatrixXcd e00 = Eigen::MatrixXcd::Zero(n, n);
    e00(0, 0) = 1.0;
    const Eigen::MatrixXcd tz = oracle::toeplitz(z, n), tzb = oracle::toeplitz(zb, n);
    o.require(Eigen::MatrixXcd::Identity(n, n) - tz * tzb == e00, "oracle I - T_z T_zbar");
    const Eigen::MatrixXcd big = oracle::toeplitz(z, n + 1);
    const Eigen::MatrixXcd sc = (big.adjoint() * big - big * big.adjoint()).topLeftCorner(n, n);
    o.require(sc == e00, "oracle self-commutator");
    for (int k = 0; k <= 8; ++k) {
      Eigen::MatrixXcd ekk = Eigen::MatrixXcd::Zero(n, n);
      ekk(k, k) = 1.0;
      const Eigen::MatrixXcd d = oracle::toeplitz(LaurentPoly::monomial(k), n) *
                                     oracle::toeplitz(LaurentPoly::monomial(-k), n) -
                                 oracle::toeplitz(LaurentPoly::monomial(k + 1), n) *
                                     oracle::toeplitz(LaurentPoly::monomial(-k - 1), n);
      o.require(d == ekk, "oracle diagonal k = " + std::to_string(k));
    }
    return o;
  });

  report(9, "two all runs are byte-identical, each < 60 s", [] {
    Outcome o;
    const ReportConfig cfg = config(64);
    const Timed a = timed_run("all", cfg), b = timed_run("all", cfg);
    const std::string ja = emit_report(a.report, ReportFormat::json), jb = emit_report(b.report, ReportFormat::json);
    o.require(ja == jb, "JSON reports differ");
    o.require(emit_report(a.report, ReportFormat::csv) == emit_report(b.report, ReportFormat::csv), "CSV differs");
    o.require(exit_status(a.report) == 0, "all suite has failures");
    o.require(a.seconds < 60.0 && b.seconds < 60.0, "runtime " + num(a.seconds) + " / " + num(b.seconds) + " s");
    if (o.ok)
      o.detail = std::to_string(a.report.cases.size()) + " cases, " + std::to_string(ja.size()) + " bytes, " +
                 num(a.seconds) + " s / " + num(b.seconds) + " s";
    return o;
  });

  return failures == 0 ? 0 : 1;
}
