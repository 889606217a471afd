// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hardylab/rank_algebra.hpp"
#include "hardylab/section.hpp"
#include "hardylab/symbol.hpp"

namespace hardylab {

enum class TheoremTag { main1, thm2H, main3_case1, main3_case2, lemma1T, lemma2Ts, partial_isometry, none };

const char* to_string(TheoremTag t);
std::optional<TheoremTag> theorem_from_string(const std::string& s);

struct ToleranceSchedule {
  double structural = 0.0;  // 1e-10 * dim * max(1, sum of symbol l1 norms)
  double tails = 0.0;       // sum of tail_l1 budgets
  double value = 0.0;       // scale * (10 * tails + structural)
};

ToleranceSchedule tolerance_schedule(std::initializer_list<const CertifiedTruncation*> symbols, int dim,
                                     double scale = 1.0);

struct ClassificationResult {
  TheoremTag tag = TheoremTag::none;
  std::string subcase;  // lemma case label such as "(3)(a)(i)"
  std::string reason;   // first failed step or diagnostic when tag is none
  std::map<std::string, cplx> constants;
  std::map<std::string, CertifiedTruncation> symbols;
  std::map<std::string, double> residuals;
  std::optional<ProjectionResiduals> projection;
  int window = 0;
  double tol = 0.0;
  double tails = 0.0;
};

// ---------------------------------------------------------------------------
// Identity verifiers. Each returns the Frobenius norm of the defect on the
// certified window together with the scale it should be compared against.

struct IdentityResidual {
  double residual = 0.0;
  double residual_bound = 0.0;  // tail-induced allowance from the section algebra
  double scale = 1.0;           // product of l1 norms of the symbols involved
  int window = 0;
};

/// (T_fg - T_f T_g) - H*_conj(f) H_g.
IdentityResidual semicommutator_check(const CertifiedTruncation& f, const CertifiedTruncation& g, int n);
/// (T_zbar T_f T_g T_z - T_f T_g) - (V H_conj(f) 1) (x) (V H_g 1).
IdentityResidual rank1s_identity_check(const CertifiedTruncation& f, const CertifiedTruncation& g, int n);
/// T_zbar T_phi T_z - T_phi, the shift invariance of a pure Toeplitz section.
IdentityResidual brown_halmos_check(const CertifiedTruncation& phi, int n);
/// T_{z^k} T_{zbar^k} - T_{z^{k+1}} T_{zbar^{k+1}} - e_k (x) e_k at size n.
IdentityResidual diagonal_projection_check(int k, int n);

struct FlipResiduals {
  double v_squared = 0.0;  // max over probes of ||V V x - x||
  double vpv = 0.0;        // ||V(analytic part of x) - coanalytic part of Vx||
  double vhv = 0.0;        // ||V H_f V - H_f*|| on the window, Frobenius
  int window = 0;
};

/// Probes the flip on the basis of frequencies -n..n-1 and on the symbol's
/// own coefficient vector.
FlipResiduals flip_identities(const CertifiedTruncation& f, int n);

struct ToeplitznessResult {
  double residual = 0.0;
  int window = 0;
};

/// ||T_zbar A T_z - A|| on the window the product certifies.
ToeplitznessResult toeplitzness_test(const FiniteSection& a);

// ---------------------------------------------------------------------------
// Classifiers. A tol of zero or less selects the tolerance schedule.

ClassificationResult stroethoff_classify(const CertifiedTruncation& f, const CertifiedTruncation& g,
                                         const CertifiedTruncation& phi, const CertifiedTruncation& psi, int n = 32,
                                         double tol = 0.0);
ClassificationResult selfadjoint_sum_classify(const CertifiedTruncation& f, const CertifiedTruncation& g,
                                              const CertifiedTruncation& phi, const CertifiedTruncation& psi,
                                              int n = 32, double tol = 0.0);
ClassificationResult toeplitz_product_classify(const CertifiedTruncation& f, const CertifiedTruncation& g, int n,
                                               double tol = 0.0);
ClassificationResult hankel_product_classify(const CertifiedTruncation& f, const CertifiedTruncation& g, int n,
                                             double tol = 0.0);

struct PartialIsometryResult {
  bool partial_isometry = false;
  std::string side;  // "A*A" when the certificate came from A*A
  std::optional<ProjectionResiduals> star_a;  // A*A
  std::optional<ProjectionResiduals> a_star;  // AA*
};

PartialIsometryResult partial_isometry_test(const FiniteSection& a, double tol);

/// phi = f + conj(c + T_conj(u) f).
CertifiedTruncation cowen_symbol(const CertifiedTruncation& f, const CertifiedTruncation& u, cplx c, double tol = 1e-10);

/// Constructor data for the second self-commutator family.
struct Case2Metadata {
  CertifiedTruncation u;
  CertifiedTruncation v;
  cplx c = 0.0;
  std::optional<BlaschkeProduct> u_blaschke;  // zeros of u when it is not a monomial
};

ClassificationResult self_commutator_classify(const CertifiedTruncation& phi, int n, double tol = 0.0,
                                              const std::optional<Case2Metadata>& meta = std::nullopt);

/// An inner symbol in exactly divisible form: kappa z^m, or a Blaschke product.
struct MonomialInner {
  int m = 1;
  cplx kappa = 1.0;
};
using InnerSymbol = std::variant<MonomialInner, BlaschkeProduct>;

/// Recognizes kappa z^m among exact truncations.
std::optional<MonomialInner> as_monomial_inner(const CertifiedTruncation& u, double tol);

struct ThetaMembership {
  std::optional<CertifiedTruncation> h;
  cplx t = 0.0;             // constant with Re t = mean of |v|^2 - 1
  double consistency = 0.0; // divisibility / zero-agreement defect
  double identity = 0.0;    // sup-grid | |v|^2 - Re(u h + 1) |
  std::string reason;
};

ThetaMembership theta_membership(const CertifiedTruncation& v, const InnerSymbol& u, double tol);

struct KzResult {
  double residual_as_written = 0.0;  // I - k(x)k vs T_conj(phi_z) T_phi_z
  double residual_swapped = 0.0;     // I - k(x)k vs T_phi_z T_conj(phi_z)
  std::string satisfied;             // "as_written", "swapped", "both" or "neither"
  double tail = 0.0;                 // Blaschke tail plus kernel tail at n
  double threshold = 0.0;
  int window = 0;
};

/// Requires |z| <= 0.8 and tol > tail.
KzResult kz_identity_check(cplx z, int n, double tol);

// Helpers shared with the witness generator and tests.

/// V H_conj(f) 1: amplitude m >= 0 is f_(m+1).
CoeffVector flip_hankel_conj_one(const CertifiedTruncation& f);
/// V H_g 1: amplitude m >= 0 is conj(g_(-1-m)).
CoeffVector flip_hankel_one(const CertifiedTruncation& g);

/// theta from the projection P onto theta H^2 (columns of P, all rows): the
/// largest column of the rank-one P - T_z P T_zbar, normalized and gauged so
/// the lowest-index coefficient above tol is positive real. Empty when every
/// column is at most tol.
std::optional<LaurentPoly> recover_inner_from_range(const Eigen::MatrixXcd& p, double tol);

/// Rotates p so its lowest-index coefficient with modulus above tol is
/// positive real; returns the applied unimodular factor.
cplx gauge_fix(LaurentPoly& p, double tol);

}  // namespace hardylab
