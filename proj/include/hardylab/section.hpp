// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "hardylab/error.hpp"
#include "hardylab/symbol.hpp"

namespace hardylab {

// Frequency-indexed coordinate spaces. Index j of an analytic space is
// frequency j; index j of a coanalytic space is frequency -1-j.
enum class SpaceKind { analytic, coanalytic };

struct Space {
  SpaceKind kind = SpaceKind::analytic;
  int size = 0;

  static Space analytic(int n) { return {SpaceKind::analytic, n}; }
  static Space coanalytic(int n) { return {SpaceKind::coanalytic, n}; }
  int frequency(int index) const noexcept { return kind == SpaceKind::analytic ? index : -1 - index; }
  /// Index of frequency n, or -1 when n is outside the space.
  int index_of(int n) const noexcept;
  friend bool operator==(const Space&, const Space&) = default;
};

/// Dense amplitudes over the contiguous frequency range [lo, lo + size).
class CoeffVector {
 public:
  CoeffVector() = default;
  CoeffVector(int lo, Eigen::VectorXcd amps) : lo_(lo), amps_(std::move(amps)) {}

  static CoeffVector basis(const Space& s, int index);
  static CoeffVector from_space(const Space& s, const Eigen::VectorXcd& v);
  static CoeffVector from_poly(const LaurentPoly& p);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(amps_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(amps_.size()); }
  cplx at(int freq) const noexcept;
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  /// Amplitudes listed in the index order of s; frequencies outside this
  /// vector's range read as zero.
  Eigen::VectorXcd in_space(const Space& s) const;
  /// The natural space tag when the range is one-sided.
  std::optional<Space> space() const;
  double norm() const { return amps_.norm(); }
  bool is_zero() const { return (amps_.array() == cplx(0.0)).all(); }

  friend CoeffVector operator*(cplx s, const CoeffVector& v) { return CoeffVector(v.lo_, s * v.amps_); }

 private:
  int lo_ = 0;
  Eigen::VectorXcd amps_;
};

/// The anti-unitary flip (Vf)(w) = conj(w) conj(f(w)): amplitude at n moves to
/// -n-1 and is conjugated.
CoeffVector flip_apply(const CoeffVector& v);
CoeffVector analytic_part(const CoeffVector& v);
CoeffVector coanalytic_part(const CoeffVector& v);
/// <x, y> = sum_n x_n conj(y_n) over the union of frequency ranges.
cplx inner(const CoeffVector& x, const CoeffVector& y);

struct KernelVector {
  CoeffVector vec;
  double tail_l2 = 0.0;  // l2 norm of the discarded amplitudes
};

/// Normalized reproducing kernel at z, frequencies 0..n-1.
KernelVector kernel_vector(cplx z, int n);

/// Column k of the true operator is supported on row indices
/// [0, slope*k + offset]; slope is 0 (anchored) or 1 (banded).
struct Reach {
  int slope = 1;
  long offset = 0;
  long at(long k) const noexcept { return slope * k + offset; }
};

struct WindowCertificate {
  int exact_cols = 0;
  double residual_bound = 0.0;
};

enum class Build { full, shape };

/// Dense section of an operator between frequency-indexed spaces. Entries are
/// computed from the truncated symbols; the leading exact_cols columns agree
/// with the corresponding operator built from those same truncations, and the
/// truncation tails contribute at most residual_bound in operator norm.
class FiniteSection {
 public:
  FiniteSection(Eigen::MatrixXcd m, Space rows, Space cols, Reach col_reach, Reach row_reach, int exact_cols,
                double residual_bound, double norm_bound, std::optional<int> bandwidth);

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  const Space& row_space() const noexcept { return rows_; }
  const Space& col_space() const noexcept { return cols_; }
  int rows() const noexcept { return rows_.size; }
  int cols() const noexcept { return cols_.size; }
  bool shape_only() const noexcept { return shape_only_; }
  bool square() const noexcept { return rows_ == cols_; }

  /// Symbol bandwidth; empty when any constituent symbol carries a tail or
  /// the operator is not symbol-generated.
  const std::optional<int>& bandwidth() const noexcept { return bandwidth_; }
  int exact_cols() const noexcept { return exact_cols_; }
  double residual_bound() const noexcept { return residual_bound_; }
  double norm_bound() const noexcept { return norm_bound_; }
  const Reach& col_reach() const noexcept { return col_reach_; }
  const Reach& row_reach() const noexcept { return row_reach_; }
  WindowCertificate certificate() const { return {exact_cols_, residual_bound_}; }

  /// Same metadata without the matrix.
  FiniteSection shape() const;
  /// Leading w x w block; rejects w beyond the certified window.
  Eigen::MatrixXcd block(int w) const;

 private:
  Eigen::MatrixXcd m_;
  Space rows_, cols_;
  Reach col_reach_, row_reach_;
  int exact_cols_;
  double residual_bound_;
  double norm_bound_;
  std::optional<int> bandwidth_;
  bool shape_only_ = false;
};

/// Entry (j, k) = phi_(j - k) on frequencies 0..n-1.
FiniteSection toeplitz_section(const CertifiedTruncation& phi, int n, Build b = Build::full);
/// Entry (j, k) = phi_(-1-j-k); rows are coanalytic frequencies -1..-m,
/// columns analytic 0..n-1.
FiniteSection hankel_section(const CertifiedTruncation& phi, int n, int m, Build b = Build::full);
/// Codomain sized n + (negative extent of phi), which captures every column.
FiniteSection hankel_section(const CertifiedTruncation& phi, int n, Build b = Build::full);
FiniteSection identity_section(const Space& s, Build b = Build::full);
/// (f (x) g) h = <h, g> f, with f read in `rows` and g in `cols`.
FiniteSection rank_one(const CoeffVector& f, const CoeffVector& g, const Space& rows, const Space& cols);
/// Uses the vectors' own one-sided spaces.
FiniteSection rank_one(const CoeffVector& f, const CoeffVector& g);

// Section algebra. Multiplication requires A.col_space == B.row_space.
FiniteSection multiply(const FiniteSection& a, const FiniteSection& b);
FiniteSection add(const FiniteSection& a, const FiniteSection& b);
FiniteSection adjoint(const FiniteSection& a);
FiniteSection scale(cplx s, const FiniteSection& a);
/// Leading rows x cols corner, spaces shrunk accordingly.
FiniteSection crop(const FiniteSection& a, int rows, int cols);

inline FiniteSection operator*(const FiniteSection& a, const FiniteSection& b) { return multiply(a, b); }
inline FiniteSection operator+(const FiniteSection& a, const FiniteSection& b) { return add(a, b); }
inline FiniteSection operator-(const FiniteSection& a, const FiniteSection& b) { return add(a, scale(-1.0, b)); }
inline FiniteSection operator*(cplx s, const FiniteSection& a) { return scale(s, a); }

CoeffVector apply(const FiniteSection& a, const CoeffVector& v);

/// Smallest size n >= window for which build(n, Build::shape) certifies at
/// least `window` exact columns, found from metadata alone.
template <class F>
int certified_size(int window, F&& build, int max_size = 1 << 13) {
  int n = window;
  for (int iter = 0; iter < 64; ++iter) {
    const int exact = build(n, Build::shape).exact_cols();
    if (exact >= window) return n;
    const int next = exact > 0 ? n + (window - exact) : 2 * n;
    if (next > max_size) break;
    n = next;
  }
  fail(ErrorCode::undecidable, "no section size up to " + std::to_string(max_size) + " certifies a window of " +
                                   std::to_string(window));
}

template <class F>
FiniteSection build_certified(int window, F&& build) {
  const int n = certified_size(window, build);
  FiniteSection s = build(n, Build::full);
  if (s.exact_cols() < window) fail(ErrorCode::undecidable, "certified build lost its window");
  return s;
}

struct ProjectionResiduals {
  double sa = 0.0;      // ||Q - Q*||_F on the window
  double idem = 0.0;    // ||Q^2 - Q||_F on the window
  cplx trace = 0.0;
  double norm_est = 0.0;  // power-iteration estimate of ||Q_window||_2
  double frobenius = 0.0;
  int window = 0;
};

/// Requires Q square with both Q and Q*Q exact on the window.
ProjectionResiduals projection_residuals(const FiniteSection& q, int window);
/// Largest window on which projection_residuals may be evaluated.
int projection_window(const FiniteSection& q);

/// Spectral-norm estimate by power iteration on A^H A.
double power_norm(const Eigen::MatrixXcd& a, int iterations = 30, double tol = 1e-10);

/// Matrix of P_K T_phi P_K with P_K = I - T_theta T_conj(theta), n x n.
/// Rejects theta failing is_inner_check at tol.
FiniteSection compressed_section(const CertifiedTruncation& theta, const CertifiedTruncation& phi, int n, double tol);

/// Row-major, one line per row, "re,im" pairs separated by commas.
std::string to_csv(const FiniteSection& a);

}  // namespace hardylab
