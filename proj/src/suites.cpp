// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "hardylab/error.hpp"
#include "hardylab/rank_algebra.hpp"
#include "hardylab/report.hpp"
#include "hardylab/symbol_json.hpp"
#include "hardylab/witness.hpp"

namespace hardylab {

using nlohmann::json;

namespace {

using Job = std::function<void(CaseRecord&)>;

struct Task {
  CaseRecord stub;  // suite, check, index, theorem, family are filled in up front
  Job job;
};

void run_task(Task& t, bool timings) {
  const auto start = std::chrono::steady_clock::now();
  try {
    t.job(t.stub);
  } catch (const Error& e) {
    t.stub.status = e.code() == ErrorCode::undecidable ? "undecidable" : "fail";
    t.stub.reason = e.what();
  } catch (const std::exception& e) {
    t.stub.status = "fail";
    t.stub.reason = e.what();
  }
  if (timings)
    t.stub.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Workers pull the next unclaimed index; results stay in task order.
void run_all(std::vector<Task>& tasks, int threads, bool timings) {
  int count = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  count = std::min<int>(count, static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) run_task(tasks[i], timings);
  };
  if (count <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

class Builder {
 public:
  Builder(const ReportConfig& cfg, std::vector<Task>& tasks) : cfg_(cfg), tasks_(tasks) {}

  const ReportConfig& cfg() const { return cfg_; }
  double scaled(double tol) const { return tol * cfg_.tol_scale; }
  int count(int fallback) const { return cfg_.instances > 0 ? cfg_.instances : fallback; }

  void add(std::string suite, std::string check, std::uint64_t index, std::string theorem, std::string family,
           Job job) {
    CaseRecord c;
    c.suite = std::move(suite);
    c.check = std::move(check);
    c.index = index;
    c.theorem = std::move(theorem);
    c.family = std::move(family);
    tasks_.push_back({std::move(c), std::move(job)});
  }

 private:
  const ReportConfig& cfg_;
  std::vector<Task>& tasks_;
};

void verdict(CaseRecord& c, bool ok, const std::string& why) {
  c.status = ok ? "pass" : "fail";
  if (!ok && c.reason.empty()) c.reason = why;
}

CertifiedTruncation exact(LaurentPoly p) { return CertifiedTruncation::exact(std::move(p)); }

// ---------------------------------------------------------------------------
// identities

LaurentPoly random_band_limited(Rng& rng) {
  const int lo = -rng.integer(0, 4), hi = rng.integer(0, 4);
  std::vector<cplx> c;
  for (int k = lo; k <= hi; ++k) c.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return LaurentPoly(lo, std::move(c));
}

double exact_defect(int n, const std::function<FiniteSection(int, Build)>& build) {
  return build_certified(n, build).block(n).norm();
}

void identities_suite(Builder& b) {
  const std::string suite = "identities";
  const int n = b.cfg().n;
  const double tol = b.scaled(b.cfg().tolerance.identity);
  for (int i = 0; i < b.count(500); ++i) {
    b.add(suite, "pair_identities", i, "", "band_limited", [&b, n, tol, i, suite](CaseRecord& c) {
      Rng rng(b.cfg().seed, suite + "/pair", i);
      const CertifiedTruncation f = exact(random_band_limited(rng)), g = exact(random_band_limited(rng));
      c.params = {{"f", laurent_to_json(f.poly)}, {"g", laurent_to_json(g.poly)}, {"n", n}};
      c.tol = tol;
      const IdentityResidual s = semicommutator_check(f, g, n);
      const IdentityResidual r = rank1s_identity_check(f, g, n);
      const IdentityResidual bh = brown_halmos_check(f, n);
      const FlipResiduals fl = flip_identities(f, n);
      const double fs = std::max(1.0, f.poly.l1_norm());
      // Every residual is relative to the l1 scale of the symbols involved.
      c.residuals = {{"semicommutator", s.residual / s.scale},
                     {"rank1s", r.residual / r.scale},
                     {"brown_halmos", bh.residual / bh.scale},
                     {"v_squared", fl.v_squared / fs},
                     {"vpv", fl.vpv / fs},
                     {"vhv", fl.vhv / fs}};
      const double worst = std::max_element(c.residuals.begin(), c.residuals.end(), [](auto& x, auto& y) {
                             return x.second < y.second;
                           })->second;
      c.verdict = worst <= tol ? "identities hold" : "identity defect";
      verdict(c, worst <= tol, "largest relative residual " + format_number(worst));
    });
  }

  // Known values hold exactly: the residual must be zero, not small.
  auto known = [&](std::string check, std::uint64_t idx, std::function<double()> eval, json params) {
    b.add(suite, std::move(check), idx, "", "known_value", [eval, params](CaseRecord& c) {
      c.params = params;
      c.tol = 0.0;
      c.residuals["defect"] = eval();
      c.verdict = c.residuals["defect"] == 0.0 ? "exact" : "inexact";
      verdict(c, c.residuals["defect"] == 0.0, "nonzero defect");
    });
  };
  const auto z = exact(LaurentPoly::monomial(1)), zb = exact(LaurentPoly::monomial(-1));
  known("I - T_z T_zbar = e0 (x) e0", 0, [n, z, zb] {
    return exact_defect(n, [&](int k, Build bd) {
      const Space s = Space::analytic(k);
      const CoeffVector e0 = CoeffVector::basis(s, 0);
      return identity_section(s, bd) - toeplitz_section(z, k, bd) * toeplitz_section(zb, k, bd) -
             rank_one(e0, e0, s, s);
    });
  }, json{{"n", n}});
  known("self-commutator of T_z = e0 (x) e0", 0, [n, z] {
    return exact_defect(n, [&](int k, Build bd) {
      const Space s = Space::analytic(k);
      const CoeffVector e0 = CoeffVector::basis(s, 0);
      const FiniteSection t = toeplitz_section(z, k, bd);
      return adjoint(t) * t - t * adjoint(t) - rank_one(e0, e0, s, s);
    });
  }, json{{"n", n}});
  for (int k = 0; k <= 8; ++k)
    known("T_z^k T_zbar^k - T_z^(k+1) T_zbar^(k+1) = e_k (x) e_k", k,
          [n, k] { return diagonal_projection_check(k, n).residual; }, json{{"n", n}, {"k", k}});
}

// ---------------------------------------------------------------------------
// rank-lemmas

using Vec = Eigen::VectorXcd;

Vec random_vec(Rng& rng, int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v;
}

cplx random_complex(Rng& rng, double lo, double hi) {
  return std::polar(rng.uniform(lo, hi), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

double random_real(Rng& rng) { return (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.3, 2.0); }

const std::vector<std::string>& quadruple_families() {
  static const std::vector<std::string> f = {"random",     "sa_case_I_real", "sa_case_I_complex", "sa_case_II",
                                             "zero_case2", "near_sa_case_II", "rank_one"};
  return f;
}

struct Quadruple {
  Vec f, g, phi, psi;
};

Quadruple make_quadruple(Rng& rng, const std::string& family, int dim) {
  Quadruple q;
  q.g = random_vec(rng, dim);
  q.psi = random_vec(rng, dim);
  if (family == "random") {
    q.f = random_vec(rng, dim);
    q.phi = random_vec(rng, dim);
  } else if (family == "sa_case_I_real") {
    q.f = random_real(rng) * q.g;
    q.phi = random_real(rng) * q.psi;
  } else if (family == "sa_case_I_complex") {
    // f = lambda g, psi = -a g, phi = mu psi with |a|^2 Im mu = -Im lambda.
    const cplx lambda(rng.uniform(-2.0, 2.0), random_real(rng));
    const cplx a = random_complex(rng, 0.5, 1.5);
    const cplx mu(rng.uniform(-2.0, 2.0), -lambda.imag() / std::norm(a));
    q.f = lambda * q.g;
    q.psi = -a * q.g;
    q.phi = mu * q.psi;
  } else if (family == "sa_case_II" || family == "near_sa_case_II") {
    // a_ij = e * (r1, r2, s1, s2) with r2 s1 - r1 s2 = 1 (or 1.05 when near).
    q.f = random_vec(rng, dim);
    const cplx e = random_complex(rng, 1.0, 1.0);
    const double r1 = random_real(rng), r2 = random_real(rng), s2 = random_real(rng);
    const double unit = family == "sa_case_II" ? 1.0 : 1.05;
    const double s1 = (unit + r1 * s2) / r2;
    q.phi = e * r1 * q.f + e * r2 * q.g;
    q.psi = e * s1 * q.f + e * s2 * q.g;
  } else if (family == "zero_case2") {
    const cplx lambda = random_complex(rng, 0.5, 2.0);
    q.phi = random_vec(rng, dim);
    q.f = lambda * q.phi;
    q.psi = -std::conj(lambda) * q.g;
  } else {
    // rank_one: the second pair vanishes; half the draws are self-adjoint.
    q.f = rng.uniform() < 0.5 ? Vec(random_real(rng) * q.g) : random_vec(rng, dim);
    q.phi = Vec::Zero(dim);
    q.psi = Vec::Zero(dim);
  }
  return q;
}

void add_witness_case(Builder& b, const std::string& suite, const std::string& check, const WitnessSpec& spec,
                      std::function<void(CaseRecord&, const Witness&, const ClassificationResult&, double)> judge);

void rank_lemmas_suite(Builder& b) {
  const std::string suite = "rank-lemmas";
  const auto& fams = quadruple_families();
  const int quads = b.count(10000);
  for (int i = 0; i < quads; ++i) {
    const std::string family = fams[i % fams.size()];
    b.add(suite, "quadruple", i, "", family, [&b, i, family, suite](CaseRecord& c) {
      Rng rng(b.cfg().seed, suite + "/" + family, i);
      const int dim = rng.integer(2, 8);
      const Quadruple q = make_quadruple(rng, family, dim);
      c.params = {{"dim", dim}};
      c.tol = kOracleTol;
      const RankTwoVerdict sa = rank_two_selfadjoint_classify(q.f, q.g, q.phi, q.psi);
      const RankTwoVerdict zero = rank_two_zero_classify(q.f, q.g, q.phi, q.psi);
      c.residuals["sa_oracle"] = sa.oracle_residual;
      c.residuals["zero_oracle"] = zero.oracle_residual;
      for (const auto& [k, v] : sa.residuals) c.residuals["sa:" + k] = v;
      for (const auto& [k, v] : zero.residuals) c.residuals["zero:" + k] = v;
      c.verdict = std::string(to_string(sa.tag)) + "/" + to_string(zero.tag);
      // Disagreements inside the declared conditioning band are reported, not failed.
      const bool sa_ok = sa.agrees || sa.tag == RankTwoCase::ill_conditioned;
      verdict(c, sa_ok && zero.agrees, sa_ok ? "zero classifier disagrees with the matrix" :
                                                "self-adjoint classifier disagrees with the matrix");
    });
  }

  // Symbol-level lemmas through their witness generators.
  const int per_family = std::max(1, quads / 500);
  for (TheoremTag t : {TheoremTag::lemma1T, TheoremTag::lemma2Ts}) {
    for (const std::string& family : witness_families(t)) {
      for (int i = 0; i < per_family; ++i) {
        WitnessSpec spec;
        spec.theorem = t;
        spec.seed = b.cfg().seed;
        spec.index = i;
        spec.family = family;
        add_witness_case(b, suite, to_string(t), spec,
                         [](CaseRecord& c, const Witness& w, const ClassificationResult& r, double) {
                           const bool ok = r.tag == w.expected.tag && r.subcase == w.expected.subcase;
                           verdict(c, ok, "expected " + std::string(to_string(w.expected.tag)) + " " +
                                              w.expected.subcase);
                         });
      }
    }
    const std::string param = t == TheoremTag::lemma1T ? "lambda" : "imag_shift";
    for (int i = 0; i < per_family; ++i) {
      WitnessSpec spec;
      spec.theorem = t;
      spec.seed = b.cfg().seed;
      spec.index = i;
      if (t == TheoremTag::lemma1T) spec.family = "(2)";
      spec.perturbation = Perturbation{param, 1.1};
      add_witness_case(b, suite, std::string(to_string(t)) + "_perturbed", spec,
                       [](CaseRecord& c, const Witness&, const ClassificationResult& r, double) {
                         verdict(c, r.tag == TheoremTag::none, "perturbed instance was accepted");
                       });
    }
  }
}

// ---------------------------------------------------------------------------
// Witness sweeps

void add_witness_case(Builder& b, const std::string& suite, const std::string& check, const WitnessSpec& spec,
                      std::function<void(CaseRecord&, const Witness&, const ClassificationResult&, double)> judge) {
  b.add(suite, check, spec.index, to_string(spec.theorem), spec.family, [&b, spec, judge](CaseRecord& c) {
    const Witness w = make_case(spec);
    c.family = w.family;
    c.params = witness_to_json(w);
    const double tol = b.scaled(w.band_limited ? b.cfg().tolerance.exact : b.cfg().tolerance.certified);
    c.tol = tol;
    const ClassificationResult r = classify_witness(w, b.cfg().n, tol);
    c.verdict = to_string(r.tag);
    if (!r.subcase.empty()) c.verdict += " " + r.subcase;
    c.reason = r.reason;
    c.residuals = r.residuals;
    if (r.projection) {
      c.residuals["sa"] = r.projection->sa;
      c.residuals["idem"] = r.projection->idem;
      c.trace = r.projection->trace.real();
    }
    judge(c, w, r, tol);
    if (c.status == "pass") c.reason.clear();
  });
}

// Tag, projection residuals, trace and recovered constants of an unperturbed witness.
bool accepted(CaseRecord& c, const Witness& w, const ClassificationResult& r, double tol, int n) {
  if (r.tag != w.expected.tag || r.subcase != w.expected.subcase) {
    verdict(c, false, "expected " + std::string(to_string(w.expected.tag)));
    return false;
  }
  if (r.projection) {
    const double trace_err = std::abs(r.projection->trace - w.expected_trace(n));
    c.residuals["trace_error"] = trace_err;
    if (r.projection->sa > tol || r.projection->idem > tol || trace_err > tol) {
      verdict(c, false, "projection residual or trace outside tol");
      return false;
    }
  }
  double worst = 0.0;
  for (const auto& [k, e] : w.expected.constants) {
    const auto it = r.constants.find(k);
    if (it == r.constants.end()) {
      verdict(c, false, "constant " + k + " not recovered");
      return false;
    }
    worst = std::max(worst, std::abs(it->second - e) / std::max(1.0, std::abs(e)));
  }
  c.residuals["constant_error"] = worst;
  if (worst > tol) {
    verdict(c, false, "recovered constants differ from the generator");
    return false;
  }
  return true;
}

WitnessSpec sweep_spec(const Builder& b, TheoremTag t, int i) {
  WitnessSpec s;
  s.theorem = t;
  s.seed = b.cfg().seed;
  s.index = i;
  return s;
}

void perturbed_sweep(Builder& b, const std::string& suite, TheoremTag t, const std::string& param, int count) {
  const double min_idem = b.cfg().tolerance.perturbed_idem;
  for (int i = 0; i < count; ++i) {
    WitnessSpec s = sweep_spec(b, t, i);
    s.perturbation = Perturbation{param, 1.1};
    add_witness_case(b, suite, std::string(to_string(t)) + "_perturbed", s,
                     [min_idem](CaseRecord& c, const Witness&, const ClassificationResult& r, double) {
                       const auto it = r.residuals.find("idem");
                       const bool idem_ok = it != r.residuals.end() && it->second >= min_idem;
                       verdict(c, r.tag == TheoremTag::none && idem_ok,
                               r.tag != TheoremTag::none ? "perturbed instance was accepted"
                                                         : "idem residual below the rejection margin");
                     });
  }
}

void main1_suite(Builder& b) {
  const int count = b.count(100), n = b.cfg().n;
  for (int i = 0; i < count; ++i)
    add_witness_case(b, "main1", "main1", sweep_spec(b, TheoremTag::main1, i),
                     [n](CaseRecord& c, const Witness& w, const ClassificationResult& r, double tol) {
                       if (accepted(c, w, r, tol, n)) verdict(c, true, "");
                     });
  perturbed_sweep(b, "main1", TheoremTag::main1, "a", count);
}

void thm2h_suite(Builder& b) {
  const int count = b.count(100), n = b.cfg().n;
  for (int i = 0; i < count; ++i)
    add_witness_case(b, "thm2H", "thm2H", sweep_spec(b, TheoremTag::thm2H, i),
                     [n](CaseRecord& c, const Witness& w, const ClassificationResult& r, double tol) {
                       if (!accepted(c, w, r, tol, n)) return;
                       // Recovered theta against the generator's, budget 10 x tails.
                       const CertifiedTruncation want = truncate_to_tail(*w.expected.theta, w.tail_target);
                       const double err = (r.symbols.at("theta").poly - want.poly).max_abs();
                       const double budget = w.band_limited ? tol : 10.0 * r.tails;
                       c.residuals["theta_error"] = err;
                       c.residuals["theta_budget"] = budget;
                       verdict(c, err <= budget, "recovered theta differs from the generator");
                     });
  perturbed_sweep(b, "thm2H", TheoremTag::thm2H, "mu", count);
}

void main3_suite(Builder& b) {
  const std::string suite = "main3";
  const int count = b.count(100), n = b.cfg().n;
  for (int i = 0; i < count; ++i)
    add_witness_case(b, suite, "main3_case1", sweep_spec(b, TheoremTag::main3_case1, i),
                     [n](CaseRecord& c, const Witness& w, const ClassificationResult& r, double tol) {
                       if (!accepted(c, w, r, tol, n)) return;
                       verdict(c, r.residuals.at("model_space") <= tol, "Q differs from I - T_theta T_thetabar");
                     });
  // Gap family: b rescaled so that |a|^2 - |b|^2 = 1.2.
  for (int i = 0; i < count; ++i) {
    WitnessSpec s = sweep_spec(b, TheoremTag::main3_case1, i);
    const double b2 = std::norm(make_case(s).params.at("b"));
    s.perturbation = Perturbation{"b", std::sqrt((b2 - 0.2) / b2)};
    add_witness_case(b, suite, "main3_case1_gap", s,
                     [](CaseRecord& c, const Witness&, const ClassificationResult& r, double) {
                       verdict(c, r.tag == TheoremTag::none, "gap-1.2 instance was accepted");
                     });
  }
  for (int i = 0; i < count; ++i)
    add_witness_case(b, suite, "main3_case2", sweep_spec(b, TheoremTag::main3_case2, i),
                     [n](CaseRecord& c, const Witness& w, const ClassificationResult& r, double tol) {
                       if (!accepted(c, w, r, tol, n)) return;
                       const double h_err = (r.symbols.at("h").poly - *w.expected.h).max_abs();
                       c.residuals["h_error"] = h_err;
                       verdict(c, r.residuals.at("qq_identity") <= tol && h_err <= tol,
                               "QQ identity or recovered h outside tol");
                     });
  for (int i = 0; i < count; ++i) {
    WitnessSpec s = sweep_spec(b, TheoremTag::main3_case2, i);
    s.perturbation = Perturbation{"v", 1.1};
    add_witness_case(b, suite, "main3_case2_perturbed", s,
                     [](CaseRecord& c, const Witness&, const ClassificationResult& r, double) {
                       verdict(c, r.tag == TheoremTag::none, "perturbed instance was accepted");
                     });
  }

  b.add(suite, "fejer_riesz_gamma", 0, "main3_case2", "", [&b](CaseRecord& c) {
    const LaurentPoly w = LaurentPoly::from_terms({{-2, 0.25}, {0, 1.0}, {2, 0.25}});
    const FejerRiesz fr = fejer_riesz(w, b.scaled(1e-10));
    const double gamma = 2.0 - std::sqrt(3.0);
    const double gamma_err = std::abs(fr.v.coeff(2) / fr.v.coeff(0) - gamma);
    c.params = {{"w", laurent_to_json(w)}, {"v", laurent_to_json(fr.v)}};
    c.tol = b.scaled(1e-12);
    c.residuals = {{"gamma_error", gamma_err}, {"sup_residual", fr.residual}};
    c.verdict = "gamma = " + format_number(std::real(fr.v.coeff(2) / fr.v.coeff(0)), 17);
    verdict(c, gamma_err <= c.tol && fr.residual <= b.scaled(1e-10), "Fejer-Riesz oracle mismatch");
  });
}

// ---------------------------------------------------------------------------
// kz

const std::vector<cplx>& kz_points() {
  static const std::vector<cplx> z = {0.0, 0.3, cplx(0.5, 0.2), 0.8};
  return z;
}

KzResult run_kz(const Builder& b, cplx z, int n) {
  const CertifiedTruncation phi = expr_truncate(SymbolExpr::blaschke(BlaschkeProduct({z})), n);
  const double tail = phi.tail_l1 + std::pow(std::abs(z), n);
  const double structural = tolerance_schedule({&phi}, n).structural;
  return kz_identity_check(z, n, b.scaled(10.0 * tail + structural));
}

void kz_suite(Builder& b) {
  const int n = std::max(128, b.cfg().n);
  const auto& pts = kz_points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx z = pts[i];
    b.add("kz", "kz_identity", i, "", "", [&b, z, n](CaseRecord& c) {
      const KzResult k = run_kz(b, z, n);
      c.params = {{"z", complex_to_json(z)}, {"n", n}};
      c.tol = k.threshold;
      c.residuals = {{"as_written", k.residual_as_written}, {"swapped", k.residual_swapped}, {"tail", k.tail}};
      c.verdict = k.satisfied;
      verdict(c, k.satisfied == "as_written" || k.satisfied == "swapped", "neither ordering within threshold");
    });
  }
  b.add("kz", "kz_ordering_consistency", 0, "", "", [&b, n](CaseRecord& c) {
    std::string flag;
    bool consistent = true;
    for (cplx z : kz_points()) {
      const std::string s = run_kz(b, z, n).satisfied;
      if (flag.empty()) flag = s;
      consistent = consistent && s == flag;
    }
    c.params = {{"n", n}};
    c.verdict = consistent ? flag : "inconsistent";
    verdict(c, consistent && flag != "neither", "ordering flag differs across z");
  });
}

using SuiteFn = void (*)(Builder&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"identities", identities_suite}, {"rank-lemmas", rank_lemmas_suite}, {"main1", main1_suite},
      {"thm2H", thm2h_suite},           {"main3", main3_suite},             {"kz", kz_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

Report run_suite(const std::string& suite, const ReportConfig& config) {
  require(config.n >= 8 && config.n <= 512, "N must lie in 8..512");
  require(config.tol_scale > 0.0, "tolerance scale must be positive");
  require(config.instances >= 0, "instance count must be nonnegative");
  std::vector<Task> tasks;
  Builder b(config, tasks);
  bool found = false;
  for (const auto& [name, fn] : registry()) {
    if (suite == "all" || suite == name) {
      fn(b);
      found = true;
    }
  }
  if (!found) fail(ErrorCode::unknown_suite, "unknown suite '" + suite + "'");
  run_all(tasks, config.threads, config.timings);

  Report r;
  r.version = artifact_version();
  r.suite = suite;
  r.config = config;
  r.cases.reserve(tasks.size());
  for (Task& t : tasks) r.cases.push_back(std::move(t.stub));
  return r;
}

}  // namespace hardylab
