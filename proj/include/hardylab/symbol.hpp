// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "hardylab/laurent.hpp"

namespace hardylab {

/// Zeros may not come closer to the circle than this; it caps the per-factor
/// l1 constant (1+|a|)/(1-|a|) near 2e6.
inline constexpr double kZeroRadiusGuard = 1.0 - 1e-6;

/// Finite Blaschke product  kappa * prod_i (a_i - z) / (1 - conj(a_i) z).
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<cplx> zeros, cplx unimodular = 1.0);

  const std::vector<cplx>& zeros() const noexcept { return zeros_; }
  cplx unimodular() const noexcept { return unimodular_; }
  int degree() const noexcept { return static_cast<int>(zeros_.size()); }
  /// Direct rational evaluation, valid anywhere off the poles.
  cplx operator()(cplx z) const;
  /// Product of the per-factor l1 bounds (1+|a|)/(1-|a|).
  double l1_bound() const;

 private:
  std::vector<cplx> zeros_;
  cplx unimodular_;
};

/// A Laurent polynomial together with a certified bound on the l1 mass of the
/// Fourier coefficients that were dropped to obtain it.
struct CertifiedTruncation {
  LaurentPoly poly;
  double tail_l1 = 0.0;

  static CertifiedTruncation exact(LaurentPoly p) { return {std::move(p), 0.0}; }
  bool band_limited() const noexcept { return tail_l1 == 0.0; }
  /// Bound on the l1 norm of the represented symbol.
  double l1_bound() const noexcept { return poly.l1_norm() + tail_l1; }
};

CertifiedTruncation operator+(const CertifiedTruncation& a, const CertifiedTruncation& b);
CertifiedTruncation operator-(const CertifiedTruncation& a, const CertifiedTruncation& b);
CertifiedTruncation operator*(const CertifiedTruncation& a, const CertifiedTruncation& b);
CertifiedTruncation operator*(cplx s, const CertifiedTruncation& a);
CertifiedTruncation conj(const CertifiedTruncation& a);

/// Taylor coefficients 0..n-1 of b with a bound on the discarded l1 mass.
CertifiedTruncation blaschke_truncate(const BlaschkeProduct& b, int n);

/// Composite symbol built from constants, monomials, Laurent polynomials and
/// Blaschke products. Immutable, cheap to copy.
class SymbolExpr {
 public:
  enum class Kind { constant, monomial, laurent, blaschke, sum, product, conjugate, scale };

  static SymbolExpr constant(cplx c);
  static SymbolExpr monomial(int n);
  static SymbolExpr laurent(LaurentPoly p);
  static SymbolExpr blaschke(BlaschkeProduct b);
  static SymbolExpr sum(std::vector<SymbolExpr> terms);
  static SymbolExpr product(std::vector<SymbolExpr> factors);
  /// conjugate(conjugate(e)) returns e itself.
  static SymbolExpr conjugate(const SymbolExpr& e);
  static SymbolExpr scale(cplx s, const SymbolExpr& e);

  Kind kind() const noexcept;
  cplx value() const;                      // constant, scale factor
  int exponent() const;                    // monomial
  const LaurentPoly& poly() const;         // laurent
  const BlaschkeProduct& blaschke() const; // blaschke
  const std::vector<SymbolExpr>& children() const;

  /// True when no Blaschke leaf with a nonzero zero occurs.
  bool band_limited() const;

  friend SymbolExpr operator+(const SymbolExpr& a, const SymbolExpr& b) { return sum({a, b}); }
  friend SymbolExpr operator-(const SymbolExpr& a, const SymbolExpr& b) { return sum({a, scale(-1.0, b)}); }
  friend SymbolExpr operator*(const SymbolExpr& a, const SymbolExpr& b) { return product({a, b}); }
  friend SymbolExpr operator*(cplx s, const SymbolExpr& a) { return scale(s, a); }

 private:
  struct Node;
  explicit SymbolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline SymbolExpr conj(const SymbolExpr& e) { return SymbolExpr::conjugate(e); }

/// Truncates every Blaschke leaf to n Taylor coefficients and combines;
/// band-limited leaves are kept exactly.
CertifiedTruncation expr_truncate(const SymbolExpr& e, int n);

/// Smallest truncation length (searched up to max_len) whose tail bound is at
/// most target. Throws ErrorCode::undecidable if none is found.
CertifiedTruncation truncate_to_tail(const SymbolExpr& e, double target, int max_len = 4096);

struct InnerCheck {
  bool inner = false;
  double max_deviation = 0.0;      // max over the grid of ||value| - 1|
  double max_negative_coeff = 0.0; // largest |coeff(n)|, n < 0
  int grid = 0;
};

/// Decides innerness at this truncation. Rejects tol <= tail_l1.
InnerCheck is_inner_check(const CertifiedTruncation& t, double tol);

/// Grid extremes of |symbol|.
struct ModulusRange {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};
ModulusRange modulus_range(const LaurentPoly& p);

/// sup over the default grid of |p|.
double sup_norm(const LaurentPoly& p);

}  // namespace hardylab
