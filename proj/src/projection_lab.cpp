// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/projection_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hardylab {

namespace {

CertifiedTruncation exact(LaurentPoly p) { return CertifiedTruncation::exact(std::move(p)); }
CertifiedTruncation constant(cplx c) { return exact(LaurentPoly::constant(c)); }
CertifiedTruncation zsym(int n) { return exact(LaurentPoly::monomial(n)); }

int neg_extent(const LaurentPoly& p) { return p.empty() ? 0 : std::max(0, -p.min_freq()); }
int pos_extent(const LaurentPoly& p) { return p.empty() ? 0 : std::max(0, p.max_freq()); }

double positive_l1(const LaurentPoly& p) { return p.restrict(1, std::max(1, p.max_freq())).l1_norm(); }
double negative_l1(const LaurentPoly& p) { return p.restrict(std::min(-1, p.min_freq()), -1).l1_norm(); }

double resolve_tol(const ToleranceSchedule& ts, double tol) {
  const double t = tol > 0.0 ? tol : ts.value;
  if (!(t > ts.tails))
    fail(ErrorCode::undecidable, "tolerance " + format_number(t) + " does not exceed the combined tail budget " +
                                     format_number(ts.tails));
  return t;
}

double window_norm(const FiniteSection& s, int n) { return s.block(n).norm(); }

double diff_norm(const CoeffVector& a, const CoeffVector& b) {
  const int lo = std::min(a.size() ? a.lo() : 0, b.size() ? b.lo() : 0);
  const int hi = std::max(a.size() ? a.hi() : -1, b.size() ? b.hi() : -1);
  double s = 0.0;
  for (int n = lo; n <= hi; ++n) s += std::norm(a.at(n) - b.at(n));
  return std::sqrt(s);
}

double grid_max_abs(const LaurentPoly& p) {
  double m = 0.0;
  for (cplx v : eval_grid(p, default_grid_size(p.bandwidth()))) m = std::max(m, std::abs(v));
  return m;
}

FiniteSection T(const CertifiedTruncation& s, int k, Build b) { return toeplitz_section(s, k, b); }

// Smallest section on which both Q and Q*Q are exact across the window.
template <class F>
FiniteSection build_projection(int window, F&& build) {
  auto squared = [&](int k, Build b) {
    const FiniteSection q = build(k, b);
    return q * q;
  };
  return build_certified(window, [&](int k, Build b) { return b == Build::shape ? squared(k, b) : build(k, b); });
}

IdentityResidual finish_identity(const FiniteSection& s, int n, double scale) {
  return {window_norm(s, n), s.residual_bound(), scale, n};
}

}  // namespace

const char* to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::main1: return "main1";
    case TheoremTag::thm2H: return "thm2H";
    case TheoremTag::main3_case1: return "main3_case1";
    case TheoremTag::main3_case2: return "main3_case2";
    case TheoremTag::lemma1T: return "lemma1T";
    case TheoremTag::lemma2Ts: return "lemma2Ts";
    case TheoremTag::partial_isometry: return "partial_isometry";
    case TheoremTag::none: return "none";
  }
  return "none";
}

std::optional<TheoremTag> theorem_from_string(const std::string& s) {
  for (TheoremTag t : {TheoremTag::main1, TheoremTag::thm2H, TheoremTag::main3_case1, TheoremTag::main3_case2,
                       TheoremTag::lemma1T, TheoremTag::lemma2Ts, TheoremTag::partial_isometry, TheoremTag::none})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

ToleranceSchedule tolerance_schedule(std::initializer_list<const CertifiedTruncation*> symbols, int dim, double scale) {
  double l1 = 0.0;
  ToleranceSchedule ts;
  for (const CertifiedTruncation* s : symbols) {
    l1 += s->poly.l1_norm();
    ts.tails += s->tail_l1;
  }
  ts.structural = 1e-10 * dim * std::max(1.0, l1);
  ts.value = scale * (10.0 * ts.tails + ts.structural);
  return ts;
}

// ---------------------------------------------------------------------------
// Identity verifiers

CoeffVector flip_hankel_conj_one(const CertifiedTruncation& f) {
  return flip_apply(coanalytic_part(CoeffVector::from_poly(f.poly.conjugate())));
}

CoeffVector flip_hankel_one(const CertifiedTruncation& g) {
  return flip_apply(coanalytic_part(CoeffVector::from_poly(g.poly)));
}

IdentityResidual semicommutator_check(const CertifiedTruncation& f, const CertifiedTruncation& g, int n) {
  const CertifiedTruncation fb = conj(f);
  auto build = [&](int k, Build b) {
    const int m = k + std::max(neg_extent(fb.poly), neg_extent(g.poly));
    const FiniteSection lhs = T(f * g, k, b) - T(f, k, b) * T(g, k, b);
    return lhs - adjoint(hankel_section(fb, k, m, b)) * hankel_section(g, k, m, b);
  };
  return finish_identity(build_certified(n, build), n, f.l1_bound() * g.l1_bound());
}

IdentityResidual rank1s_identity_check(const CertifiedTruncation& f, const CertifiedTruncation& g, int n) {
  const CoeffVector u1 = flip_hankel_conj_one(f);
  const CoeffVector u2 = flip_hankel_one(g);
  auto build = [&](int k, Build b) {
    const Space s = Space::analytic(k);
    const FiniteSection fg = T(f, k, b) * T(g, k, b);
    return T(zsym(-1), k, b) * fg * T(zsym(1), k, b) - fg - rank_one(u1, u2, s, s);
  };
  return finish_identity(build_certified(n, build), n, f.l1_bound() * g.l1_bound());
}

IdentityResidual brown_halmos_check(const CertifiedTruncation& phi, int n) {
  auto build = [&](int k, Build b) { return T(zsym(-1), k, b) * T(phi, k, b) * T(zsym(1), k, b) - T(phi, k, b); };
  return finish_identity(build_certified(n, build), n, phi.l1_bound());
}

IdentityResidual diagonal_projection_check(int k, int n) {
  require(k >= 0 && k < n, "diagonal index outside the section");
  auto build = [&](int size, Build b) {
    const Space s = Space::analytic(size);
    const CoeffVector ek = CoeffVector::basis(s, k);
    return T(zsym(k), size, b) * T(zsym(-k), size, b) - T(zsym(k + 1), size, b) * T(zsym(-k - 1), size, b) -
           rank_one(ek, ek, s, s);
  };
  return finish_identity(build_certified(n, build), n, 1.0);
}

FlipResiduals flip_identities(const CertifiedTruncation& f, int n) {
  FlipResiduals r;
  r.window = n;
  std::vector<CoeffVector> probes;
  for (int k = -n; k < n; ++k) probes.emplace_back(k, Eigen::VectorXcd::Ones(1));
  const CoeffVector fv = CoeffVector::from_poly(f.poly);
  probes.push_back(fv);
  probes.push_back(cplx(0.3, 0.7) * fv);
  for (const CoeffVector& x : probes) {
    r.v_squared = std::max(r.v_squared, diff_norm(flip_apply(flip_apply(x)), x));
    r.vpv = std::max(r.vpv, diff_norm(flip_apply(analytic_part(x)), coanalytic_part(flip_apply(x))));
  }
  // V H_f V on coanalytic basis vectors against the columns of H_f*.
  const int k = n + neg_extent(f.poly);
  const FiniteSection h = hankel_section(f, k, k);
  const FiniteSection hs = adjoint(h);
  const Space co = Space::coanalytic(k);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const CoeffVector x = CoeffVector::basis(co, j);
    const CoeffVector lhs = flip_apply(apply(h, flip_apply(x)));
    const CoeffVector rhs = apply(hs, x);
    acc += std::pow(diff_norm(lhs, rhs), 2);
  }
  r.vhv = std::sqrt(acc);
  return r;
}

ToeplitznessResult toeplitzness_test(const FiniteSection& a) {
  if (!a.square() || a.row_space().kind != SpaceKind::analytic)
    fail(ErrorCode::incompatible_spaces, "Toeplitzness needs a square section on the analytic space");
  if (a.exact_cols() < 2) fail(ErrorCode::invalid_argument, "Toeplitzness needs an exact window of at least 2");
  const int k = a.rows();
  const FiniteSection d = T(zsym(-1), k, Build::full) * a * T(zsym(1), k, Build::full) - a;
  const int w = std::min(d.exact_cols(), k);
  if (w < 1) fail(ErrorCode::invalid_argument, "Toeplitzness window is empty");
  return {window_norm(d, w), w};
}

// ---------------------------------------------------------------------------
// Toeplitzness of T_f T_g - T_phi T_psi and self-adjointness of sums

namespace {

FiniteSection pair_sum(const CertifiedTruncation& f, const CertifiedTruncation& g, const CertifiedTruncation& phi,
                       const CertifiedTruncation& psi, int k, Build b) {
  return T(f, k, b) * T(g, k, b) + T(phi, k, b) * T(psi, k, b);
}

}  // namespace

ClassificationResult stroethoff_classify(const CertifiedTruncation& f, const CertifiedTruncation& g,
                                         const CertifiedTruncation& phi, const CertifiedTruncation& psi, int n,
                                         double tol) {
  const ToleranceSchedule ts = tolerance_schedule({&f, &g, &phi, &psi}, n);
  ClassificationResult r;
  r.tol = resolve_tol(ts, tol);
  r.tails = ts.tails;
  r.window = n;

  const bool fbar_an = positive_l1(f.poly) <= r.tol;
  const bool g_an = negative_l1(g.poly) <= r.tol;
  const bool phibar_an = positive_l1(phi.poly) <= r.tol;
  const bool psi_an = negative_l1(psi.poly) <= r.tol;
  const bool case1 = (fbar_an || g_an) && (phibar_an || psi_an);

  const RankTwoVerdict rz = rank_two_zero_classify(flip_hankel_conj_one(f), flip_hankel_one(g),
                                                   flip_hankel_conj_one(phi), flip_hankel_one(psi));
  r.residuals["rank_two_sum"] = rz.oracle_residual;
  bool case2 = false;
  if (!case1 && rz.tag == RankTwoCase::zero_case2) {
    const cplx lambda = *rz.lambda;
    const double m1 = positive_l1((f - lambda * phi).poly);
    const double m2 = negative_l1((psi + lambda * g).poly);
    r.residuals["membership"] = std::max(m1, m2);
    case2 = m1 <= r.tol && m2 <= r.tol;
    if (case2) r.constants["lambda"] = lambda;
  }

  auto tbuild = [&](int k, Build b) {
    const FiniteSection s = pair_sum(f, g, phi, psi, k, b);
    return T(zsym(-1), k, b) * s * T(zsym(1), k, b) - s;
  };
  r.residuals["toeplitzness"] = window_norm(build_certified(n, tbuild), n);
  const bool toeplitz = r.residuals["toeplitzness"] <= r.tol;

  const bool lemma = case1 || case2;
  if (lemma != toeplitz) {
    r.reason = "lemma verdict disagrees with the Toeplitzness check";
    return r;
  }
  if (!lemma) {
    r.reason = "T_f T_g + T_phi T_psi is not Toeplitz";
    return r;
  }
  auto ibuild = [&](int k, Build b) { return pair_sum(f, g, phi, psi, k, b) - T(f * g + phi * psi, k, b); };
  r.residuals["sum_identity"] = window_norm(build_certified(n, ibuild), n);
  if (r.residuals["sum_identity"] > r.tol) {
    r.reason = "sum differs from T_{fg+phi psi}";
    return r;
  }
  r.tag = TheoremTag::lemma1T;
  r.subcase = case1 ? "(1)" : "(2)";
  r.symbols["symbol"] = f * g + phi * psi;
  return r;
}

ClassificationResult selfadjoint_sum_classify(const CertifiedTruncation& f, const CertifiedTruncation& g,
                                              const CertifiedTruncation& phi, const CertifiedTruncation& psi, int n,
                                              double tol) {
  const ToleranceSchedule ts = tolerance_schedule({&f, &g, &phi, &psi}, n);
  ClassificationResult r;
  r.tol = resolve_tol(ts, tol);
  r.tails = ts.tails;
  r.window = n;

  const CertifiedTruncation sym = f * g + phi * psi;
  double imag = 0.0;
  for (cplx v : eval_grid(sym.poly, default_grid_size(sym.poly.bandwidth()))) imag = std::max(imag, std::abs(v.imag()));
  r.residuals["imag_part"] = imag;
  const bool real_valued = imag <= r.tol;

  auto sabuild = [&](int k, Build b) {
    const FiniteSection s = pair_sum(f, g, phi, psi, k, b);
    return s - adjoint(s);
  };
  auto tbuild = [&](int k, Build b) {
    const FiniteSection s = pair_sum(f, g, phi, psi, k, b);
    return T(zsym(-1), k, b) * s * T(zsym(1), k, b) - s;
  };
  r.residuals["self_adjointness"] = window_norm(build_certified(n, sabuild), n);
  r.residuals["toeplitzness"] = window_norm(build_certified(n, tbuild), n);
  const bool oracle = r.residuals["self_adjointness"] <= r.tol && r.residuals["toeplitzness"] > r.tol;

  const CoeffVector u1 = flip_hankel_conj_one(f), u2 = flip_hankel_one(g);
  const CoeffVector u3 = flip_hankel_conj_one(phi), u4 = flip_hankel_one(psi);
  const bool z1 = u1.norm() <= r.tol || u2.norm() <= r.tol;
  const bool z2 = u3.norm() <= r.tol || u4.norm() <= r.tol;

  std::string subcase;
  std::string why;
  if (z1 && z2) {
    why = "sum is Toeplitz";
  } else if (z1 || z2) {
    const RankOneVerdict v = z1 ? rank_one_selfadjoint_test(u3, u4) : rank_one_selfadjoint_test(u1, u2);
    r.residuals["rank_one_oracle"] = v.oracle_residual;
    if (v.lambda) {
      subcase = z1 ? "(1)" : "(2)";
      r.constants[z1 ? "a" : "b"] = *v.lambda;
    } else {
      why = "rank-one part is not self-adjoint";
    }
  } else {
    const RankTwoVerdict rz = rank_two_zero_classify(u1, u2, u3, u4);
    if (rz.tag == RankTwoCase::zero_case2) {
      why = "sum is Toeplitz";
    } else {
      const RankTwoVerdict v = rank_two_selfadjoint_classify(u1, u2, u3, u4);
      r.residuals["rank_two_oracle"] = v.oracle_residual;
      for (const auto& [k, x] : v.residuals) r.residuals["rank_two." + k] = x;
      switch (v.tag) {
        case RankTwoCase::sa_case_I_real:
          subcase = "(3)(a)(i)";
          r.constants["lambda"] = std::conj(*v.lambda);
          r.constants["mu"] = std::conj(*v.mu);
          break;
        case RankTwoCase::sa_case_I_complex:
          subcase = "(3)(a)(ii)";
          r.constants["lambda"] = std::conj(*v.lambda);
          r.constants["mu"] = std::conj(*v.mu);
          r.constants["c"] = std::conj(*v.a);
          break;
        case RankTwoCase::sa_case_II: {
          subcase = "(3)(b)";
          const auto& a = *v.a_ij;
          r.constants["a11"] = a[0];
          r.constants["a12"] = a[1];
          r.constants["a21"] = a[2];
          r.constants["a22"] = a[3];
          break;
        }
        case RankTwoCase::ill_conditioned:
          why = "rank-two dependence test is ill-conditioned";
          break;
        default:
          why = "rank-two part is not self-adjoint";
      }
    }
  }
  if (!subcase.empty() && !real_valued) {
    subcase.clear();
    why = "fg + phi psi is not real-valued";
  }
  const bool lemma = !subcase.empty();
  if (lemma != oracle) {
    r.constants.clear();
    r.reason = "lemma verdict disagrees with the matrix check" + (why.empty() ? std::string() : " (" + why + ")");
    return r;
  }
  if (!lemma) {
    r.constants.clear();
    r.reason = why;
    return r;
  }
  r.tag = TheoremTag::lemma2Ts;
  r.subcase = subcase;
  return r;
}

// ---------------------------------------------------------------------------
// Toeplitz products that are projections

ClassificationResult toeplitz_product_classify(const CertifiedTruncation& f, const CertifiedTruncation& g, int n,
                                               double tol) {
  const ToleranceSchedule ts = tolerance_schedule({&f, &g}, n);
  ClassificationResult r;
  r.tol = resolve_tol(ts, tol);
  r.tails = ts.tails;
  r.window = n;

  auto build = [&](int k, Build b) { return T(f, k, b) * T(g, k, b); };
  const FiniteSection q = build_projection(n, build);
  const ProjectionResiduals pr = projection_residuals(q, n);
  r.projection = pr;
  r.residuals["sa"] = pr.sa;
  r.residuals["idem"] = pr.idem;
  r.residuals["trace_integrality"] = std::abs(pr.trace - std::round(pr.trace.real()));

  const CertifiedTruncation fg = f * g;
  r.residuals["fg_minus_1"] = grid_max_abs(fg.poly - LaurentPoly::constant(1.0));
  if (r.residuals["fg_minus_1"] > r.tol) {
    r.reason = "fg != 1";
    return r;
  }
  const ModulusRange mr = modulus_range(f.poly);
  r.residuals["modulus_spread"] = mr.max - mr.min;
  if (mr.max - mr.min > r.tol) {
    r.reason = "|f| is not constant";
    return r;
  }
  const double a = mr.mean;
  const CertifiedTruncation theta = cplx(1.0 / a) * f;
  const InnerCheck ic = is_inner_check(theta, r.tol);
  r.residuals["inner_deviation"] = std::max(ic.max_deviation, ic.max_negative_coeff);
  if (!ic.inner) {
    r.reason = "f/a is not inner";
    return r;
  }
  if (theta.band_limited() && theta.poly.bandwidth() == 0) {
    r.reason = "f/a is constant (identity operator)";
    return r;
  }
  r.residuals["g_membership"] = (g.poly - cplx(1.0 / a) * theta.poly.conjugate()).l1_norm();
  if (r.residuals["g_membership"] > r.tol) {
    r.reason = "g != conj(theta)/a";
    return r;
  }
  if (pr.sa > r.tol || pr.idem > r.tol) {
    r.reason = "T_f T_g is not a projection on the window";
    return r;
  }
  r.tag = TheoremTag::main1;
  r.constants["a"] = a;
  r.symbols["theta"] = theta;
  return r;
}

// ---------------------------------------------------------------------------
// Hankel products that are projections

cplx gauge_fix(LaurentPoly& p, double tol) {
  for (int n = p.min_freq(); !p.empty() && n <= p.max_freq(); ++n) {
    const cplx c = p.coeff(n);
    if (std::abs(c) > tol) {
      const cplx phase = std::abs(c) / c;
      p *= phase;
      return phase;
    }
  }
  return 1.0;
}

std::optional<LaurentPoly> recover_inner_from_range(const Eigen::MatrixXcd& p, double tol) {
  // P - T_z P T_zbar projects onto theta H^2 minus z theta H^2, which is
  // theta (x) theta: column k is conj(theta_k) theta. Its first nonvanishing
  // column is the plain probe P e_k; the largest one is the best conditioned.
  Eigen::MatrixXcd r = p;
  r.bottomRightCorner(p.rows() - 1, p.cols() - 1) -= p.topLeftCorner(p.rows() - 1, p.cols() - 1);
  Eigen::Index best = 0;
  const double nb = r.colwise().norm().maxCoeff(&best);
  if (!(nb > tol)) return std::nullopt;
  const Eigen::VectorXcd v = r.col(best) / nb;
  LaurentPoly theta(0, std::vector<cplx>(v.data(), v.data() + v.size()));
  gauge_fix(theta, tol);
  return theta;
}

namespace {

// || Q_n - (I - T_theta T_conj(theta))_n ||_F
double model_space_residual(const FiniteSection& q, const CertifiedTruncation& theta, int n) {
  const FiniteSection pk = identity_section(Space::analytic(n)) - T(theta, n, Build::full) * T(conj(theta), n, Build::full);
  return (q.block(n) - pk.block(n)).norm();
}

Eigen::MatrixXcd complement_columns(const FiniteSection& q, int cols) {
  Eigen::MatrixXcd p = -q.matrix().leftCols(cols);
  for (int k = 0; k < cols; ++k) p(k, k) += 1.0;
  return p;
}

}  // namespace

ClassificationResult hankel_product_classify(const CertifiedTruncation& f, const CertifiedTruncation& g, int n,
                                             double tol) {
  const ToleranceSchedule ts = tolerance_schedule({&f, &g}, n);
  ClassificationResult r;
  r.tol = resolve_tol(ts, tol);
  r.tails = ts.tails;
  r.window = n;

  const CertifiedTruncation fb = conj(f);
  auto build = [&](int k, Build b) {
    const int m = k + std::max(neg_extent(fb.poly), neg_extent(g.poly));
    return adjoint(hankel_section(fb, k, m, b)) * hankel_section(g, k, m, b);
  };
  const int w = std::max({n, pos_extent(f.poly) + 1, neg_extent(g.poly) + 1});
  const FiniteSection q = build_projection(w, build);
  const ProjectionResiduals pr = projection_residuals(q, n);
  r.projection = pr;
  r.residuals["sa"] = pr.sa;
  r.residuals["idem"] = pr.idem;
  r.residuals["trace_integrality"] = std::abs(pr.trace - std::round(pr.trace.real()));
  if (pr.sa > r.tol || pr.idem > r.tol) {
    r.reason = "H*_conj(f) H_g is not a projection";
    return r;
  }
  if (pr.frobenius <= r.tol) {
    r.reason = "H*_conj(f) H_g is zero (trivial projection)";
    return r;
  }
  const auto rec = recover_inner_from_range(complement_columns(q, w), r.tol);
  if (!rec) {
    r.reason = "theta recovery exhausted every probe";
    return r;
  }
  const CertifiedTruncation theta{*rec, ts.tails};
  const InnerCheck ic = is_inner_check(theta, r.tol);
  r.residuals["inner_deviation"] = std::max(ic.max_deviation, ic.max_negative_coeff);
  if (!ic.inner) {
    r.reason = "recovered theta is not inner";
    return r;
  }
  cplx num = 0.0;
  double den = 0.0;
  for (int k = 1; k <= std::max(theta.poly.max_freq(), f.poly.max_freq()); ++k) {
    num += f.poly.coeff(k) * std::conj(theta.poly.coeff(k));
    den += std::norm(theta.poly.coeff(k));
  }
  if (den == 0.0) {
    r.reason = "recovered theta is constant";
    return r;
  }
  const cplx mu = -num / den;
  r.residuals["f_membership"] = negative_l1((fb + std::conj(mu) * conj(theta)).poly);
  r.residuals["g_membership"] = negative_l1((g + (1.0 / mu) * conj(theta)).poly);
  r.residuals["model_space"] = model_space_residual(q, theta, n);
  if (r.residuals["f_membership"] > r.tol || r.residuals["g_membership"] > r.tol) {
    r.reason = "membership conditions fail for the recovered mu";
    return r;
  }
  if (r.residuals["model_space"] > r.tol) {
    r.reason = "Q differs from I - T_theta T_conj(theta)";
    return r;
  }
  r.tag = TheoremTag::thm2H;
  r.constants["mu"] = mu;
  r.symbols["theta"] = theta;
  return r;
}

// ---------------------------------------------------------------------------
// Partial isometries, Cowen symbols

PartialIsometryResult partial_isometry_test(const FiniteSection& a, double tol) {
  PartialIsometryResult out;
  const FiniteSection sa = adjoint(a) * a;
  const int w1 = projection_window(sa);
  if (w1 < 1) fail(ErrorCode::undecidable, "A*A has no certified window");
  out.star_a = projection_residuals(sa, w1);
  const FiniteSection as = a * adjoint(a);
  const int w2 = projection_window(as);
  if (w2 >= 1) out.a_star = projection_residuals(as, w2);
  out.partial_isometry = out.star_a->sa <= tol && out.star_a->idem <= tol;
  out.side = "A*A";
  return out;
}

CertifiedTruncation cowen_symbol(const CertifiedTruncation& f, const CertifiedTruncation& u, cplx c, double tol) {
  if (!f.poly.empty() && f.poly.min_freq() < 0)
    fail(ErrorCode::invalid_argument, "cowen_symbol: f must be analytic");
  if (sup_norm(u.poly) > 1.0 + tol + u.tail_l1) fail(ErrorCode::invalid_argument, "cowen_symbol: ||u||_inf exceeds 1");
  const CertifiedTruncation prod = conj(u) * f;
  const CertifiedTruncation tuf{analytic_split(prod.poly).plus, prod.tail_l1};
  return f + conj(constant(c) + tuf);
}

// ---------------------------------------------------------------------------
// Self-commutator sums that are projections

std::optional<MonomialInner> as_monomial_inner(const CertifiedTruncation& u, double tol) {
  if (!u.band_limited() || u.poly.empty() || u.poly.min_freq() != u.poly.max_freq() || u.poly.min_freq() < 1)
    return std::nullopt;
  const cplx k = u.poly.coeff(u.poly.min_freq());
  if (std::abs(std::abs(k) - 1.0) > tol) return std::nullopt;
  return MonomialInner{u.poly.min_freq(), k};
}

namespace {

// Synthetic division by (z - a); coefficients ascending. Returns remainder.
cplx deflate(std::vector<cplx>& c, cplx a) {
  if (c.empty()) return 0.0;
  const std::size_t d = c.size() - 1;
  std::vector<cplx> q(d);
  cplx acc = c[d];
  for (std::size_t k = d; k-- > 0;) {
    q[k] = acc;
    acc = c[k] + a * acc;
  }
  c = std::move(q);
  return acc;
}

cplx eval_inner(const InnerSymbol& u, cplx z) {
  if (const auto* m = std::get_if<MonomialInner>(&u)) return m->kappa * std::pow(z, m->m);
  return std::get<BlaschkeProduct>(u)(z);
}

}  // namespace

ThetaMembership theta_membership(const CertifiedTruncation& v, const InnerSymbol& u, double tol) {
  ThetaMembership out;
  const CertifiedTruncation vv = v * conj(v);
  const LaurentPoly w = vv.poly - LaurentPoly::constant(1.0);
  const double a0 = w.coeff(0).real();
  std::vector<cplx> big_a(static_cast<std::size_t>(std::max(0, w.max_freq()) + 1), 0.0);
  for (int k = 1; k <= w.max_freq(); ++k) big_a[k] = 2.0 * w.coeff(k);

  std::vector<cplx> h;
  if (const auto* m = std::get_if<MonomialInner>(&u)) {
    require(m->m >= 1, "theta_membership: monomial inner factor needs a positive power");
    // F(0) = t must vanish, so Re t = a0 forces a0 = 0.
    out.t = 0.0;
    out.consistency = std::abs(a0);
    for (int k = 1; k < m->m && k < static_cast<int>(big_a.size()); ++k)
      out.consistency = std::max(out.consistency, std::abs(big_a[k]));
    if (out.consistency > tol) {
      out.reason = "coefficients below z^m cannot vanish with Re t = mean";
      return out;
    }
    for (int k = m->m; k < static_cast<int>(big_a.size()); ++k) h.push_back(std::conj(m->kappa) * big_a[k]);
  } else {
    const BlaschkeProduct& b = std::get<BlaschkeProduct>(u);
    auto eval_a = [&](cplx z) {
      cplx s = 0.0;
      for (std::size_t k = big_a.size(); k-- > 0;) s = s * z + big_a[k];
      return s;
    };
    out.t = -eval_a(b.zeros().front());
    for (cplx alpha : b.zeros()) out.consistency = std::max(out.consistency, std::abs(-eval_a(alpha) - out.t));
    out.consistency = std::max(out.consistency, std::abs(out.t.real() - a0));
    if (out.consistency > tol) {
      out.reason = "values -A(alpha) disagree across the zeros or miss the mean";
      return out;
    }
    std::vector<cplx> f = big_a;
    if (f.empty()) f.push_back(0.0);
    f[0] += out.t;
    double rem = 0.0;
    for (cplx alpha : b.zeros()) rem = std::max(rem, std::abs(deflate(f, alpha)));
    out.consistency = std::max(out.consistency, rem);
    if (rem > tol) {
      out.reason = "F is not divisible by the Blaschke numerator";
      return out;
    }
    // F / u = conj(kappa) (-1)^d q prod (1 - conj(alpha) z)
    LaurentPoly q(0, f);
    for (cplx alpha : b.zeros()) q = q * LaurentPoly::from_terms({{0, 1.0}, {1, -std::conj(alpha)}});
    q *= std::conj(b.unimodular()) * (b.degree() % 2 ? -1.0 : 1.0);
    h.assign(q.coeffs().begin(), q.coeffs().end());
    if (!q.empty() && q.min_freq() > 0) h.insert(h.begin(), static_cast<std::size_t>(q.min_freq()), 0.0);
  }
  LaurentPoly hp(0, h);
  // |v|^2 = Re(u h + 1) on the grid.
  const int bw = std::max({vv.poly.bandwidth(), hp.bandwidth(), 1});
  const int m = default_grid_size(4 * bw);
  const auto vals_v = eval_grid(vv.poly, m);
  const auto vals_h = eval_grid(hp, m);
  for (int j = 0; j < m; ++j) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
    const double rhs = (eval_inner(u, z) * vals_h[j] + 1.0).real();
    out.identity = std::max(out.identity, std::abs(vals_v[j].real() - rhs));
  }
  if (out.identity > tol + 2.0 * vv.tail_l1) {
    out.reason = "recovered h fails |v|^2 = Re(u h + 1)";
    return out;
  }
  out.h = CertifiedTruncation{hp, 2.0 * vv.tail_l1};
  return out;
}

ClassificationResult self_commutator_classify(const CertifiedTruncation& phi, int n, double tol,
                                              const std::optional<Case2Metadata>& meta) {
  const ToleranceSchedule ts = tolerance_schedule({&phi}, n);
  ClassificationResult r;
  r.tol = resolve_tol(ts, tol);
  r.tails = ts.tails;
  r.window = n;

  const CertifiedTruncation pb = conj(phi);
  auto build = [&](int k, Build b) {
    const FiniteSection h1 = hankel_section(pb, k, b);
    const FiniteSection h2 = hankel_section(phi, k, b);
    return adjoint(h1) * h1 - adjoint(h2) * h2;
  };
  const int w = std::max({n, pos_extent(phi.poly) + 1, neg_extent(phi.poly) + 1});
  const FiniteSection q = build_projection(w, build);
  const ProjectionResiduals pr = projection_residuals(q, n);
  r.projection = pr;
  r.residuals["sa"] = pr.sa;
  r.residuals["idem"] = pr.idem;
  r.residuals["trace_integrality"] = std::abs(pr.trace - std::round(pr.trace.real()));
  if (pr.sa > r.tol || pr.idem > r.tol) {
    r.reason = "self-commutator is not a projection";
    return r;
  }
  if (pr.frobenius <= r.tol) {
    r.reason = "self-commutator vanishes (trivial projection)";
    return r;
  }

  std::string case1_fail;
  if (const auto rec = recover_inner_from_range(complement_columns(q, w), r.tol)) {
    const CertifiedTruncation theta{*rec, ts.tails};
    const InnerCheck ic = is_inner_check(theta, r.tol);
    r.residuals["inner_deviation"] = std::max(ic.max_deviation, ic.max_negative_coeff);
    // Least squares for phi ~ a theta + b conj(theta) + c over coefficients.
    const LaurentPoly tb = theta.poly.conjugate();
    const int lo = std::min({phi.poly.min_freq(), tb.min_freq(), 0});
    const int hi = std::max({phi.poly.max_freq(), theta.poly.max_freq(), 0});
    Eigen::MatrixXcd a(hi - lo + 1, 3);
    Eigen::VectorXcd rhs(hi - lo + 1);
    for (int k = lo; k <= hi; ++k) {
      a(k - lo, 0) = theta.poly.coeff(k);
      a(k - lo, 1) = tb.coeff(k);
      a(k - lo, 2) = k == 0 ? 1.0 : 0.0;
      rhs(k - lo) = phi.poly.coeff(k);
    }
    const Eigen::VectorXcd abc = a.colPivHouseholderQr().solve(rhs);
    const LaurentPoly fit = abc(0) * theta.poly + abc(1) * tb + LaurentPoly::constant(abc(2));
    r.residuals["fit"] = (phi.poly - fit).l1_norm();
    r.residuals["unit"] = std::abs(std::norm(abc(0)) - std::norm(abc(1)) - 1.0);
    r.residuals["model_space"] = model_space_residual(q, theta, n);
    if (!ic.inner)
      case1_fail = "recovered theta is not inner";
    else if (r.residuals["fit"] > r.tol)
      case1_fail = "phi is not a theta + b conj(theta) + c";
    else if (r.residuals["unit"] > r.tol)
      case1_fail = "|a|^2 - |b|^2 != 1";
    else if (r.residuals["model_space"] > r.tol)
      case1_fail = "Q differs from I - T_theta T_conj(theta)";
    if (case1_fail.empty()) {
      r.tag = TheoremTag::main3_case1;
      r.constants["a"] = abc(0);
      r.constants["b"] = abc(1);
      r.constants["c"] = abc(2);
      r.symbols["theta"] = theta;
      return r;
    }
  } else {
    case1_fail = "theta recovery exhausted every probe";
  }

  if (!meta) {
    r.reason = "case 1 failed (" + case1_fail + "); case 2 needs constructor metadata";
    return r;
  }
  const Case2Metadata& md = *meta;
  r.residuals["case2_fit"] = (phi - (md.u * md.v + conj(md.v) + constant(md.c))).poly.l1_norm();
  const CertifiedTruncation ub = conj(md.u);
  auto qq = [&](int k, Build b) {
    const FiniteSection h = hankel_section(ub, k, b);
    return T(md.v, k, b) * (adjoint(h) * h) * T(conj(md.v), k, b);
  };
  r.residuals["qq_identity"] = (q.block(n) - build_certified(n, qq).block(n)).norm();
  std::optional<InnerSymbol> inner;
  if (md.u_blaschke)
    inner = *md.u_blaschke;
  else if (const auto mono = as_monomial_inner(md.u, r.tol))
    inner = *mono;
  if (!inner) {
    r.reason = "case 1 failed (" + case1_fail + "); metadata u is neither a monomial nor a Blaschke product";
    return r;
  }
  const ThetaMembership tm = theta_membership(md.v, *inner, r.tol);
  r.residuals["membership_consistency"] = tm.consistency;
  r.residuals["membership_identity"] = tm.identity;
  if (r.residuals["case2_fit"] > r.tol)
    r.reason = "phi != u v + conj(v) + c";
  else if (r.residuals["qq_identity"] > r.tol)
    r.reason = "Q differs from T_v H*_conj(u) H_conj(u) T_conj(v)";
  else if (!tm.h)
    r.reason = "theta membership: " + tm.reason;
  if (!r.reason.empty()) {
    r.reason = "case 1 failed (" + case1_fail + "); case 2: " + r.reason;
    return r;
  }
  r.tag = TheoremTag::main3_case2;
  r.constants["c"] = md.c;
  r.symbols["u"] = md.u;
  r.symbols["v"] = md.v;
  r.symbols["h"] = *tm.h;
  return r;
}

// ---------------------------------------------------------------------------
// Identity (kz)

KzResult kz_identity_check(cplx z, int n, double tol) {
  if (!(std::abs(z) <= 0.8)) fail(ErrorCode::invalid_argument, "kz identity: |z| must not exceed 0.8");
  const CertifiedTruncation phi = expr_truncate(SymbolExpr::blaschke(BlaschkeProduct({z})), n);
  KzResult out;
  out.window = n;
  out.tail = phi.tail_l1 + std::pow(std::abs(z), n);
  if (!(tol > out.tail)) fail(ErrorCode::undecidable, "kz identity: tolerance does not exceed the tails");
  out.threshold = tol;
  auto defect = [&](bool swapped) {
    auto build = [&](int k, Build b) {
      const Space s = Space::analytic(k);
      const CoeffVector kv = kernel_vector(z, k).vec;
      const FiniteSection prod = swapped ? T(phi, k, b) * T(conj(phi), k, b) : T(conj(phi), k, b) * T(phi, k, b);
      return identity_section(s, b) - rank_one(kv, kv, s, s) - prod;
    };
    return window_norm(build_certified(n, build), n);
  };
  out.residual_as_written = defect(false);
  out.residual_swapped = defect(true);
  const bool a = out.residual_as_written <= tol;
  const bool s = out.residual_swapped <= tol;
  out.satisfied = a && s ? "both" : a ? "as_written" : s ? "swapped" : "neither";
  return out;
}

}  // namespace hardylab
