// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/polyroots.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

// Parlett-Reinsch diagonal scaling by powers of two.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

cplx polynomial_eval(const std::vector<cplx>& c, cplx z) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

std::vector<cplx> polynomial_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  require(!c.empty(), "polynomial_roots: zero polynomial");
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return {};

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::ill_conditioned, "polynomial_roots: eigen solver did not converge");

  std::vector<cplx> dc(d);
  for (int k = 1; k <= d; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  for (cplx& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx dp = polynomial_eval(dc, r);
      if (dp == 0.0) break;
      const cplx step = polynomial_eval(c, r) / dp;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1.0 + std::abs(r))) break;
      r -= step;
    }
  }
  return roots;
}

}  // namespace hardylab
