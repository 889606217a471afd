// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/section.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hardylab {

int Space::index_of(int n) const noexcept {
  const int idx = kind == SpaceKind::analytic ? n : -1 - n;
  return idx >= 0 && idx < size ? idx : -1;
}

// ---------------------------------------------------------------------------
// CoeffVector

CoeffVector CoeffVector::basis(const Space& s, int index) {
  require(index >= 0 && index < s.size, "basis index outside the space");
  return CoeffVector(s.frequency(index), Eigen::VectorXcd::Ones(1));
}

CoeffVector CoeffVector::from_space(const Space& s, const Eigen::VectorXcd& v) {
  require(v.size() == s.size, "vector length does not match its space");
  if (s.kind == SpaceKind::analytic) return CoeffVector(0, v);
  return CoeffVector(-s.size, v.reverse());
}

CoeffVector CoeffVector::from_poly(const LaurentPoly& p) {
  if (p.empty()) return CoeffVector(0, Eigen::VectorXcd());
  const auto c = p.coeffs();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  return CoeffVector(p.min_freq(), std::move(v));
}

cplx CoeffVector::at(int freq) const noexcept {
  const int i = freq - lo_;
  return i >= 0 && i < size() ? amps_[i] : cplx(0.0);
}

Eigen::VectorXcd CoeffVector::in_space(const Space& s) const {
  Eigen::VectorXcd out(s.size);
  for (int i = 0; i < s.size; ++i) out[i] = at(s.frequency(i));
  return out;
}

std::optional<Space> CoeffVector::space() const {
  if (size() == 0) return Space::analytic(0);
  if (lo_ >= 0) return Space::analytic(hi() + 1);
  if (hi() < 0) return Space::coanalytic(-lo_);
  return std::nullopt;
}

CoeffVector flip_apply(const CoeffVector& v) {
  return CoeffVector(-v.hi() - 1, v.amplitudes().reverse().conjugate());
}

CoeffVector analytic_part(const CoeffVector& v) {
  if (v.size() == 0 || v.hi() < 0) return CoeffVector(0, Eigen::VectorXcd());
  const int start = std::max(v.lo(), 0);
  return CoeffVector(start, v.amplitudes().segment(start - v.lo(), v.hi() - start + 1));
}

CoeffVector coanalytic_part(const CoeffVector& v) {
  if (v.size() == 0 || v.lo() >= 0) return CoeffVector(-1, Eigen::VectorXcd());
  const int stop = std::min(v.hi(), -1);
  return CoeffVector(v.lo(), v.amplitudes().head(stop - v.lo() + 1));
}

cplx inner(const CoeffVector& x, const CoeffVector& y) {
  const int lo = std::max(x.lo(), y.lo());
  const int hi = std::min(x.hi(), y.hi());
  cplx s = 0.0;
  for (int n = lo; n <= hi; ++n) s += x.at(n) * std::conj(y.at(n));
  return s;
}

KernelVector kernel_vector(cplx z, int n) {
  require(n >= 1, "kernel_vector: length must be positive");
  if (!(std::abs(z) <= kZeroRadiusGuard)) fail(ErrorCode::invalid_argument, "kernel point too close to the circle");
  const double s = std::sqrt(1.0 - std::norm(z));
  Eigen::VectorXcd amps(n);
  cplx pw = s;
  for (int k = 0; k < n; ++k) {
    amps[k] = pw;
    pw *= std::conj(z);
  }
  return {CoeffVector(0, std::move(amps)), std::pow(std::abs(z), n)};
}

// ---------------------------------------------------------------------------
// FiniteSection

FiniteSection::FiniteSection(Eigen::MatrixXcd m, Space rows, Space cols, Reach col_reach, Reach row_reach,
                             int exact_cols, double residual_bound, double norm_bound, std::optional<int> bandwidth)
    : m_(std::move(m)),
      rows_(rows),
      cols_(cols),
      col_reach_(col_reach),
      row_reach_(row_reach),
      exact_cols_(std::clamp(exact_cols, 0, cols.size)),
      residual_bound_(residual_bound),
      norm_bound_(norm_bound),
      bandwidth_(bandwidth) {
  shape_only_ = m_.size() == 0 && rows.size > 0 && cols.size > 0;
  if (!shape_only_)
    require(m_.rows() == rows.size && m_.cols() == cols.size, "section matrix does not match its spaces");
}

FiniteSection FiniteSection::shape() const {
  FiniteSection s = *this;
  s.m_.resize(0, 0);
  s.shape_only_ = rows_.size > 0 && cols_.size > 0;
  return s;
}

Eigen::MatrixXcd FiniteSection::block(int w) const {
  require(!shape_only_, "shape-only section has no matrix");
  if (w < 0 || w > exact_cols_ || w > rows_.size)
    fail(ErrorCode::invalid_argument, "window " + std::to_string(w) + " exceeds the certified block of " +
                                          std::to_string(std::min(exact_cols_, rows_.size)));
  return m_.topLeftCorner(w, w);
}

namespace {

std::optional<int> combine_bw(const std::optional<int>& a, const std::optional<int>& b, bool sum) {
  if (!a || !b) return std::nullopt;
  return sum ? *a + *b : std::max(*a, *b);
}

// Index (in s) of the last nonzero amplitude of v; throws if v has mass on
// the other side of the frequency axis.
long last_index(const CoeffVector& v, const Space& s) {
  long last = -1;
  for (int n = v.lo(); n <= v.hi(); ++n) {
    if (v.at(n) == 0.0) continue;
    const bool analytic = n >= 0;
    if (analytic != (s.kind == SpaceKind::analytic))
      fail(ErrorCode::incompatible_spaces, "rank-one factor has mass outside its declared space");
    const long idx = analytic ? n : -1 - n;
    last = std::max(last, idx);
  }
  return last;
}

}  // namespace

FiniteSection toeplitz_section(const CertifiedTruncation& phi, int n, Build b) {
  require(n >= 1, "toeplitz_section: size must be positive");
  const LaurentPoly& p = phi.poly;
  const Space s = Space::analytic(n);
  const Reach col = p.empty() ? Reach{0, -1} : Reach{1, p.max_freq()};
  const Reach row = p.empty() ? Reach{0, -1} : Reach{1, -p.min_freq()};
  Eigen::MatrixXcd m;
  if (b == Build::full) {
    m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = std::max(0, k + p.min_freq()); j < n && j <= k + p.max_freq(); ++j) m(j, k) = p.coeff(j - k);
  }
  std::optional<int> bw;
  if (phi.band_limited()) bw = p.bandwidth();
  return FiniteSection(std::move(m), s, s, col, row, n, phi.tail_l1, p.l1_norm(), bw);
}

FiniteSection hankel_section(const CertifiedTruncation& phi, int n, int m, Build b) {
  require(n >= 1 && m >= 1, "hankel_section: sizes must be positive");
  const LaurentPoly& p = phi.poly;
  const long reach = p.empty() ? -1 : -1L - p.min_freq();
  Eigen::MatrixXcd mat;
  if (b == Build::full) {
    mat = Eigen::MatrixXcd::Zero(m, n);
    for (int k = 0; k < n && k <= reach; ++k)
      for (int j = 0; j < m && j + k <= reach; ++j) mat(j, k) = p.coeff(-1 - j - k);
  }
  std::optional<int> bw;
  if (phi.band_limited()) bw = p.bandwidth();
  return FiniteSection(std::move(mat), Space::coanalytic(m), Space::analytic(n), Reach{0, reach}, Reach{0, reach}, n,
                       phi.tail_l1, p.l1_norm(), bw);
}

FiniteSection hankel_section(const CertifiedTruncation& phi, int n, Build b) {
  const int dneg = phi.poly.empty() ? 0 : std::max(0, -phi.poly.min_freq());
  return hankel_section(phi, n, n + dneg, b);
}

FiniteSection identity_section(const Space& s, Build b) {
  Eigen::MatrixXcd m;
  if (b == Build::full) m = Eigen::MatrixXcd::Identity(s.size, s.size);
  return FiniteSection(std::move(m), s, s, Reach{1, 0}, Reach{1, 0}, s.size, 0.0, 1.0, 0);
}

FiniteSection rank_one(const CoeffVector& f, const CoeffVector& g, const Space& rows, const Space& cols) {
  const long lf = last_index(f, rows);
  const long lg = last_index(g, cols);
  Eigen::MatrixXcd m = f.in_space(rows) * g.in_space(cols).adjoint();
  const int exact = lf < rows.size ? cols.size : 0;
  return FiniteSection(std::move(m), rows, cols, Reach{0, lf}, Reach{0, lg}, exact, 0.0, f.norm() * g.norm(),
                       std::nullopt);
}

FiniteSection rank_one(const CoeffVector& f, const CoeffVector& g) {
  const auto rs = f.space();
  const auto cs = g.space();
  if (!rs || !cs) fail(ErrorCode::incompatible_spaces, "rank_one: vectors straddle frequency zero");
  return rank_one(f, g, *rs, *cs);
}

FiniteSection multiply(const FiniteSection& a, const FiniteSection& b) {
  if (!(a.col_space() == b.row_space()))
    fail(ErrorCode::incompatible_spaces, "multiply: domain of the left factor is not the codomain of the right");
  const Reach& ca = a.col_reach();
  const Reach& cb = b.col_reach();
  const Reach col{ca.slope * cb.slope, ca.slope * cb.offset + ca.offset};
  const Reach& ra = a.row_reach();
  const Reach& rb = b.row_reach();
  const Reach row{rb.slope * ra.slope, rb.slope * ra.offset + rb.offset};
  // Column k survives when B's true column is exact and lands inside A's
  // exact columns (which all lie inside B's row space).
  int exact = 0;
  while (exact < b.exact_cols() && cb.at(exact) < a.exact_cols()) ++exact;
  const double resid = a.residual_bound() * (b.norm_bound() + b.residual_bound()) + a.norm_bound() * b.residual_bound();
  Eigen::MatrixXcd m;
  if (!a.shape_only() && !b.shape_only()) m = a.matrix() * b.matrix();
  return FiniteSection(std::move(m), a.row_space(), b.col_space(), col, row, exact, resid,
                       a.norm_bound() * b.norm_bound(), combine_bw(a.bandwidth(), b.bandwidth(), true));
}

FiniteSection add(const FiniteSection& a, const FiniteSection& b) {
  if (!(a.row_space() == b.row_space()) || !(a.col_space() == b.col_space()))
    fail(ErrorCode::incompatible_spaces, "add: operands act between different spaces");
  auto widen = [](const Reach& x, const Reach& y) {
    return Reach{std::max(x.slope, y.slope), std::max(x.offset, y.offset)};
  };
  Eigen::MatrixXcd m;
  if (!a.shape_only() && !b.shape_only()) m = a.matrix() + b.matrix();
  return FiniteSection(std::move(m), a.row_space(), a.col_space(), widen(a.col_reach(), b.col_reach()),
                       widen(a.row_reach(), b.row_reach()), std::min(a.exact_cols(), b.exact_cols()),
                       a.residual_bound() + b.residual_bound(), a.norm_bound() + b.norm_bound(),
                       combine_bw(a.bandwidth(), b.bandwidth(), false));
}

FiniteSection adjoint(const FiniteSection& a) {
  // Row j of A is exact once its support stays inside A's exact columns.
  int exact = a.rows();
  if (a.exact_cols() < a.cols()) {
    exact = 0;
    while (exact < a.rows() && a.row_reach().at(exact) < a.exact_cols()) ++exact;
  }
  Eigen::MatrixXcd m;
  if (!a.shape_only()) m = a.matrix().adjoint();
  return FiniteSection(std::move(m), a.col_space(), a.row_space(), a.row_reach(), a.col_reach(), exact,
                       a.residual_bound(), a.norm_bound(), a.bandwidth());
}

FiniteSection scale(cplx s, const FiniteSection& a) {
  Eigen::MatrixXcd m;
  if (!a.shape_only()) m = s * a.matrix();
  return FiniteSection(std::move(m), a.row_space(), a.col_space(), a.col_reach(), a.row_reach(), a.exact_cols(),
                       std::abs(s) * a.residual_bound(), std::abs(s) * a.norm_bound(), a.bandwidth());
}

FiniteSection crop(const FiniteSection& a, int rows, int cols) {
  require(rows >= 0 && rows <= a.rows() && cols >= 0 && cols <= a.cols(), "crop larger than the section");
  Eigen::MatrixXcd m;
  if (!a.shape_only()) m = a.matrix().topLeftCorner(rows, cols);
  return FiniteSection(std::move(m), Space{a.row_space().kind, rows}, Space{a.col_space().kind, cols}, a.col_reach(),
                       a.row_reach(), std::min(a.exact_cols(), cols), a.residual_bound(), a.norm_bound(), a.bandwidth());
}

CoeffVector apply(const FiniteSection& a, const CoeffVector& v) {
  require(!a.shape_only(), "shape-only section has no matrix");
  return CoeffVector::from_space(a.row_space(), a.matrix() * v.in_space(a.col_space()));
}

// ---------------------------------------------------------------------------
// Projection diagnostics

double power_norm(const Eigen::MatrixXcd& a, int iterations, double tol) {
  if (a.size() == 0 || a.norm() == 0.0) return 0.0;
  // Fixed, generic start vector so estimates are reproducible.
  Eigen::VectorXcd x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = cplx(1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i)), 0.3 * std::cos(2.0 * static_cast<double>(i) + 1.0));
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXcd y = a.adjoint() * (a * x);
    const double next = y.norm();
    if (next == 0.0) return 0.0;
    x = y / next;
    const bool done = std::abs(next - lambda) <= tol * next;
    lambda = next;
    if (done) break;
  }
  return std::sqrt(lambda);
}

int projection_window(const FiniteSection& q) {
  if (!q.square()) fail(ErrorCode::incompatible_spaces, "projection check needs a square section");
  const FiniteSection sq = multiply(q.shape(), q.shape());
  return std::min({q.exact_cols(), sq.exact_cols(), q.rows()});
}

ProjectionResiduals projection_residuals(const FiniteSection& q, int window) {
  const int limit = projection_window(q);
  if (window < 1 || window > limit)
    fail(ErrorCode::invalid_argument,
         "window " + std::to_string(window) + " exceeds the certified block of " + std::to_string(limit));
  const Eigen::MatrixXcd b = q.block(window);
  const Eigen::MatrixXcd sq = q.matrix().topRows(window) * q.matrix().leftCols(window);
  ProjectionResiduals r;
  r.window = window;
  r.sa = (b - b.adjoint()).norm();
  r.idem = (sq - b).norm();
  r.trace = b.trace();
  r.norm_est = power_norm(b);
  r.frobenius = b.norm();
  return r;
}

FiniteSection compressed_section(const CertifiedTruncation& theta, const CertifiedTruncation& phi, int n, double tol) {
  const InnerCheck ic = is_inner_check(theta, tol);
  if (!ic.inner)
    fail(ErrorCode::invalid_argument, "compressed_section: symbol is not inner (deviation " +
                                          format_number(ic.max_deviation) + ")");
  auto build = [&](int k, Build b) {
    const FiniteSection id = identity_section(Space::analytic(k), b);
    const FiniteSection pk = id - toeplitz_section(theta, k, b) * toeplitz_section(conj(theta), k, b);
    return pk * toeplitz_section(phi, k, b) * pk;
  };
  return crop(build_certified(n, build), n, n);
}

std::string to_csv(const FiniteSection& a) {
  require(!a.shape_only(), "shape-only section has no matrix");
  std::ostringstream os;
  os << std::setprecision(17);
  const auto& m = a.matrix();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k) os << ',';
      os << m(j, k).real() << ',' << m(j, k).imag();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hardylab
