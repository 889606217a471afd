// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/rank_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace hardylab {

namespace {

using Vec = Eigen::VectorXcd;

cplx ip(const Vec& x, const Vec& y) { return y.dot(x); }

double rel(const Vec& r, const Vec& ref) {
  const double n = ref.norm();
  return n > 0.0 ? r.norm() / n : r.norm();
}

bool is_real(cplx c, double tol) { return std::abs(c.imag()) <= tol * std::abs(c); }

// sigma_min^2 sigma_max^2 of the normalized pair = 1 - |<u, v>|^2.
double relative_gram_det(const Vec& x, const Vec& y) {
  // Any pair in a one-dimensional space is dependent.
  if (x.norm() == 0.0 || y.norm() == 0.0 || x.size() < 2) return 0.0;
  Eigen::MatrixXcd m(x.size(), 2);
  m.col(0) = x.normalized();
  m.col(1) = y.normalized();
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return s(0) * s(0) * s(1) * s(1);
}

struct Pieces {
  Eigen::MatrixXcd s;
  double scale;
};

Pieces assemble(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  return {f * g.adjoint() + phi * psi.adjoint(), f.norm() * g.norm() + phi.norm() * psi.norm()};
}

bool vanishes(const Vec& v, double ref) { return v.norm() <= 1e-14 * ref; }

void require_same_size(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  require(f.size() == g.size() && g.size() == phi.size() && phi.size() == psi.size(),
          "rank-two classification needs vectors of one length");
}

}  // namespace

const char* to_string(RankTwoCase c) {
  switch (c) {
    case RankTwoCase::zero_case1: return "zero_case1";
    case RankTwoCase::zero_case2: return "zero_case2";
    case RankTwoCase::nonzero: return "nonzero";
    case RankTwoCase::sa_case_I_real: return "sa_case_I_real";
    case RankTwoCase::sa_case_I_complex: return "sa_case_I_complex";
    case RankTwoCase::sa_case_II: return "sa_case_II";
    case RankTwoCase::not_self_adjoint: return "not_self_adjoint";
    case RankTwoCase::ill_conditioned: return "ill_conditioned";
    case RankTwoCase::degenerate: return "degenerate";
  }
  return "?";
}

double dependence_ratio(const Vec& x, const Vec& y) {
  // Any pair in a one-dimensional space is dependent.
  if (x.norm() == 0.0 || y.norm() == 0.0 || x.size() < 2) return 0.0;
  Eigen::MatrixXcd m(x.size(), 2);
  m.col(0) = x.normalized();
  m.col(1) = y.normalized();
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return s(1) / s(0);
}

RankOneVerdict rank_one_selfadjoint_test(const Vec& f, const Vec& g) {
  require(f.size() == g.size(), "rank-one test needs vectors of one length");
  RankOneVerdict v;
  const double scale = f.norm() * g.norm();
  if (scale == 0.0) {
    v.trivial = v.oracle_self_adjoint = v.agrees = true;
    return v;
  }
  const Eigen::MatrixXcd s = f * g.adjoint();
  v.oracle_residual = (s - s.adjoint()).norm() / scale;
  v.oracle_self_adjoint = v.oracle_residual <= 1e-12;
  const cplx lambda = ip(f, g) / ip(g, g);
  if (rel(f - lambda * g, f) <= kResubstitutionTol && is_real(lambda, kResubstitutionTol)) v.lambda = lambda.real();
  v.agrees = v.lambda.has_value() == v.oracle_self_adjoint;
  return v;
}

RankTwoVerdict rank_two_zero_classify(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  require_same_size(f, g, phi, psi);
  RankTwoVerdict v;
  const Pieces p = assemble(f, g, phi, psi);
  v.oracle_residual = p.scale > 0.0 ? p.s.norm() / p.scale : 0.0;
  v.oracle = v.oracle_residual <= kOracleTol;

  const double ref = std::max({f.norm(), g.norm(), phi.norm(), psi.norm()});
  const bool zf = vanishes(f, ref), zg = vanishes(g, ref), zp = vanishes(phi, ref), zs = vanishes(psi, ref);
  if ((zf || zg) && (zp || zs)) {
    v.tag = RankTwoCase::zero_case1;
  } else if (zf || zg || zp || zs) {
    v.tag = RankTwoCase::nonzero;
  } else {
    const cplx lambda = -ip(g, psi) / ip(g, g);
    v.lambda = lambda;
    v.residuals["f=lambda*phi"] = rel(f - lambda * phi, f);
    v.residuals["psi=-conj(lambda)*g"] = rel(psi + std::conj(lambda) * g, psi);
    const bool ok = v.residuals["f=lambda*phi"] <= kResubstitutionTol &&
                    v.residuals["psi=-conj(lambda)*g"] <= kResubstitutionTol;
    v.tag = ok ? RankTwoCase::zero_case2 : RankTwoCase::nonzero;
  }
  v.claim = v.tag != RankTwoCase::nonzero;
  v.agrees = v.claim == v.oracle;
  return v;
}

RankTwoVerdict rank_two_selfadjoint_classify(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  require_same_size(f, g, phi, psi);
  RankTwoVerdict v;
  const Pieces p = assemble(f, g, phi, psi);
  v.oracle_residual = p.scale > 0.0 ? (p.s - p.s.adjoint()).norm() / p.scale : 0.0;
  v.oracle = v.oracle_residual <= kOracleTol;
  auto finish = [&](RankTwoCase tag) {
    v.tag = tag;
    v.claim = tag == RankTwoCase::sa_case_I_real || tag == RankTwoCase::sa_case_I_complex ||
              tag == RankTwoCase::sa_case_II || (tag == RankTwoCase::degenerate && v.claim);
    v.agrees = v.claim == v.oracle;
    return v;
  };

  const double ref = std::max({f.norm(), g.norm(), phi.norm(), psi.norm()});
  const bool first_zero = vanishes(f, ref) || vanishes(g, ref);
  const bool second_zero = vanishes(phi, ref) || vanishes(psi, ref);
  if (first_zero || second_zero) {
    if (first_zero && second_zero) {
      v.claim = true;
    } else {
      const RankOneVerdict r = first_zero ? rank_one_selfadjoint_test(phi, psi) : rank_one_selfadjoint_test(f, g);
      v.claim = r.lambda.has_value();
      if (r.lambda) v.lambda = *r.lambda;
    }
    return finish(RankTwoCase::degenerate);
  }

  const double rfg = dependence_ratio(f, g);
  const double rpp = dependence_ratio(phi, psi);
  v.residuals["dependence_fg"] = rfg;
  v.residuals["dependence_phipsi"] = rpp;
  const bool dep_fg = rfg <= kDependenceRatio;
  const bool dep_pp = rpp <= kDependenceRatio;
  if ((!dep_fg && relative_gram_det(f, g) < kIllConditionedDet) ||
      (!dep_pp && relative_gram_det(phi, psi) < kIllConditionedDet))
    return finish(RankTwoCase::ill_conditioned);
  // A self-adjoint sum has both pairs dependent or both independent.
  if (dep_fg != dep_pp) return finish(RankTwoCase::not_self_adjoint);

  if (dep_fg) {
    const cplx lambda = ip(f, g) / ip(g, g);
    const cplx mu = ip(phi, psi) / ip(psi, psi);
    v.lambda = lambda;
    v.mu = mu;
    v.residuals["f=lambda*g"] = rel(f - lambda * g, f);
    v.residuals["phi=mu*psi"] = rel(phi - mu * psi, phi);
    const bool lr = is_real(lambda, kConditionTol);
    const bool mr = is_real(mu, kConditionTol);
    if (lr && mr) return finish(RankTwoCase::sa_case_I_real);
    if (lr != mr) return finish(RankTwoCase::not_self_adjoint);
    const cplx a = -ip(psi, g) / ip(g, g);
    v.a = a;
    v.residuals["psi=-a*g"] = rel(psi + a * g, psi);
    v.residuals["unit"] = std::abs(std::norm(a) * mu.imag() / lambda.imag() + 1.0);
    const bool ok = v.residuals["psi=-a*g"] <= kResubstitutionTol && v.residuals["unit"] <= kConditionTol;
    return finish(ok ? RankTwoCase::sa_case_I_complex : RankTwoCase::not_self_adjoint);
  }

  // Dual vectors x, y in span{phi, psi}: <x,phi>=1, <x,psi>=0, <y,psi>=1, <y,phi>=0.
  Eigen::Matrix2cd gram;
  gram << ip(phi, phi), ip(psi, phi), ip(phi, psi), ip(psi, psi);
  const Eigen::Matrix2cd inv = gram.inverse();
  const Vec x = inv(0, 0) * phi + inv(1, 0) * psi;
  const Vec y = inv(0, 1) * phi + inv(1, 1) * psi;
  const cplx a11 = -ip(y, g), a12 = ip(y, f), a21 = ip(x, g), a22 = -ip(x, f);
  v.a_ij = std::array<cplx, 4>{a11, a12, a21, a22};
  v.residuals["phi=a11*f+a12*g"] = rel(phi - a11 * f - a12 * g, phi);
  v.residuals["psi=a21*f+a22*g"] = rel(psi - a21 * f - a22 * g, psi);
  const cplx c1 = a11 * std::conj(a21);
  const cplx c2 = std::conj(a12) * a22;
  v.residuals["real_a11_conj_a21"] = std::abs(c1.imag()) / (1.0 + std::abs(c1));
  v.residuals["real_conj_a12_a22"] = std::abs(c2.imag()) / (1.0 + std::abs(c2));
  v.residuals["unit"] = std::abs(std::conj(a12) * a21 - a11 * std::conj(a22) - 1.0) /
                        (1.0 + std::abs(a12 * a21) + std::abs(a11 * a22));
  const bool ok = v.residuals["phi=a11*f+a12*g"] <= kResubstitutionTol &&
                  v.residuals["psi=a21*f+a22*g"] <= kResubstitutionTol &&
                  v.residuals["real_a11_conj_a21"] <= kConditionTol &&
                  v.residuals["real_conj_a12_a22"] <= kConditionTol && v.residuals["unit"] <= kConditionTol;
  return finish(ok ? RankTwoCase::sa_case_II : RankTwoCase::not_self_adjoint);
}

// ---------------------------------------------------------------------------
// CoeffVector overloads: align every vector on the union frequency range.

namespace {

std::vector<Vec> align(std::initializer_list<const CoeffVector*> vs) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const CoeffVector* v : vs) {
    if (v->size() == 0) continue;
    lo = any ? std::min(lo, v->lo()) : v->lo();
    hi = any ? std::max(hi, v->hi()) : v->hi();
    any = true;
  }
  const int n = any ? hi - lo + 1 : 1;
  std::vector<Vec> out;
  for (const CoeffVector* v : vs) {
    Vec d = Vec::Zero(n);
    for (int k = 0; k < n && any; ++k) d[k] = v->at(lo + k);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

RankOneVerdict rank_one_selfadjoint_test(const CoeffVector& f, const CoeffVector& g) {
  const auto v = align({&f, &g});
  return rank_one_selfadjoint_test(v[0], v[1]);
}

RankTwoVerdict rank_two_zero_classify(const CoeffVector& f, const CoeffVector& g, const CoeffVector& phi,
                                      const CoeffVector& psi) {
  const auto v = align({&f, &g, &phi, &psi});
  return rank_two_zero_classify(v[0], v[1], v[2], v[3]);
}

RankTwoVerdict rank_two_selfadjoint_classify(const CoeffVector& f, const CoeffVector& g, const CoeffVector& phi,
                                             const CoeffVector& psi) {
  const auto v = align({&f, &g, &phi, &psi});
  return rank_two_selfadjoint_classify(v[0], v[1], v[2], v[3]);
}

}  // namespace hardylab
