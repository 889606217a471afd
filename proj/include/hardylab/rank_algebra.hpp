// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>
#include <string>

#include "hardylab/section.hpp"

namespace hardylab {

// Thresholds shared by the rank-one/rank-two classifiers.
inline constexpr double kDependenceRatio = 1e-10;  // sigma_min / sigma_max of normalized pair
inline constexpr double kIllConditionedDet = 1e-12;
inline constexpr double kResubstitutionTol = 1e-10;
inline constexpr double kConditionTol = 1e-9;  // reality / unit conditions on recovered constants
inline constexpr double kOracleTol = 1e-10;

enum class RankTwoCase {
  zero_case1,
  zero_case2,
  nonzero,          // rank_two_zero_classify: the sum is not zero
  sa_case_I_real,
  sa_case_I_complex,
  sa_case_II,
  not_self_adjoint,
  ill_conditioned,  // dependence could not be decided
  degenerate,       // a vector pair vanished; verdict from the rank-one test
};

const char* to_string(RankTwoCase c);

struct RankOneVerdict {
  bool trivial = false;  // f or g is zero
  std::optional<double> lambda;
  double oracle_residual = 0.0;  // ||f(x)g - g(x)f||_F / (|f||g|)
  bool oracle_self_adjoint = false;
  bool agrees = false;
};

// `claim` is what the lemma procedure concluded and `oracle` what the
// assembled matrix says: self-adjointness for the self-adjoint classifier,
// vanishing for the zero classifier.
struct RankTwoVerdict {
  RankTwoCase tag = RankTwoCase::not_self_adjoint;
  std::optional<cplx> lambda, mu, a;
  std::optional<std::array<cplx, 4>> a_ij;  // a11, a12, a21, a22
  std::map<std::string, double> residuals;
  bool claim = false;
  bool oracle = false;
  double oracle_residual = 0.0;  // relative ||S - S*||_F, or ||S||_F
  bool agrees = false;
};

// Vectors share one coordinate space; <x, y> = sum x_i conj(y_i).
RankOneVerdict rank_one_selfadjoint_test(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);
RankTwoVerdict rank_two_zero_classify(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, const Eigen::VectorXcd& phi,
                                      const Eigen::VectorXcd& psi);
RankTwoVerdict rank_two_selfadjoint_classify(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                                             const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi);

// Frequency-aligned overloads.
RankOneVerdict rank_one_selfadjoint_test(const CoeffVector& f, const CoeffVector& g);
RankTwoVerdict rank_two_zero_classify(const CoeffVector& f, const CoeffVector& g, const CoeffVector& phi,
                                      const CoeffVector& psi);
RankTwoVerdict rank_two_selfadjoint_classify(const CoeffVector& f, const CoeffVector& g, const CoeffVector& phi,
                                             const CoeffVector& psi);

/// sigma_min / sigma_max of the column-normalized pair [x y]; 0 if either is zero.
double dependence_ratio(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

}  // namespace hardylab
