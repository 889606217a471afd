// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <random>

#include "hardylab/laurent.hpp"

// Reference matrices computed straight from coefficient formulas, with no
// reach or window bookkeeping.
namespace oracle {

using hardylab::cplx;
using hardylab::LaurentPoly;

inline Eigen::MatrixXcd toeplitz(const LaurentPoly& p, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = p.coeff(j - k);
  return m;
}

inline Eigen::MatrixXcd hankel(const LaurentPoly& p, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) m(j, k) = p.coeff(-1 - j - k);
  return m;
}

inline Eigen::MatrixXcd unit(int n, int k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int lo, int hi) {
  std::normal_distribution<double> d;
  std::vector<cplx> c;
  for (int k = lo; k <= hi; ++k) c.emplace_back(d(rng), d(rng));
  return LaurentPoly(lo, c);
}

}  // namespace oracle
