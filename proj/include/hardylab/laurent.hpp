// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace hardylab {

using cplx = std::complex<double>;

/// Amplitudes below this modulus are treated as exact zeros and pruned. It is
/// not a tolerance.
inline constexpr double kDust = 1e-300;

/// A band-limited symbol on the unit circle: finitely many nonzero Fourier
/// coefficients stored densely over [min_freq, max_freq].
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int lo, std::vector<cplx> coeffs);

  static LaurentPoly constant(cplx c);
  static LaurentPoly monomial(int n, cplx c = 1.0);
  static LaurentPoly from_terms(std::initializer_list<std::pair<int, cplx>> terms);

  bool empty() const noexcept { return coeffs_.empty(); }
  // Both are 0 for the zero polynomial.
  int min_freq() const noexcept { return lo_; }
  int max_freq() const noexcept { return empty() ? 0 : lo_ + static_cast<int>(coeffs_.size()) - 1; }
  /// Smallest d with support in [-d, d].
  int bandwidth() const noexcept;
  cplx coeff(int n) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  double l1_norm() const noexcept;
  double l2_norm() const noexcept;
  double max_abs() const noexcept;

  LaurentPoly conjugate() const;
  /// Keeps only frequencies in [lo, hi].
  LaurentPoly restrict(int lo, int hi) const;
  /// Multiplication by z^k.
  LaurentPoly shifted(int k) const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(cplx s);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, cplx s) { return a *= s; }
  friend LaurentPoly operator*(cplx s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  void prune();

  int lo_ = 0;
  std::vector<cplx> coeffs_;
};

struct AnalyticSplit {
  LaurentPoly plus;   // frequencies >= 0
  LaurentPoly minus;  // frequencies < 0
};

LaurentPoly laurent_multiply(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly laurent_conjugate(const LaurentPoly& a);
AnalyticSplit analytic_split(const LaurentPoly& a);

/// Values at the M-th roots of unity, value_j = sum_n a_n w^{nj}. Rejects
/// M < 2*bandwidth + 1.
std::vector<cplx> eval_grid(const LaurentPoly& a, int m);

/// Grid size used for every sup-over-circle check: max(256, 4*bandwidth),
/// never below the anti-aliasing minimum.
int default_grid_size(int bandwidth);

}  // namespace hardylab
