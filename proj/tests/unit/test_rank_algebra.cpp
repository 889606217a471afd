// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hardylab/rank_algebra.hpp"

using namespace hardylab;
using Vec = Eigen::VectorXcd;

namespace {

Vec e(int n, int k) {
  Vec v = Vec::Zero(n);
  v(k) = 1.0;
  return v;
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(d(rng), d(rng));
  return v;
}

// Entrywise oracles on the assembled sum, written without the library.
Eigen::MatrixXcd sum(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  Eigen::MatrixXcd s(f.size(), f.size());
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j) s(i, j) = f(i) * std::conj(g(j)) + phi(i) * std::conj(psi(j));
  return s;
}

bool hermitian(const Eigen::MatrixXcd& s, double scale) {
  double worst = 0.0;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) worst = std::max(worst, std::abs(s(i, j) - std::conj(s(j, i))));
  return worst <= 1e-10 * scale;
}

bool vanishes(const Eigen::MatrixXcd& s, double scale) { return s.cwiseAbs().maxCoeff() <= 1e-10 * scale; }

double scale_of(const Vec& f, const Vec& g, const Vec& phi, const Vec& psi) {
  return f.norm() * g.norm() + phi.norm() * psi.norm();
}

}  // namespace

TEST_CASE("rank-one self-adjointness") {
  const Vec g = Vec::LinSpaced(4, 1.0, 4.0);
  const RankOneVerdict two = rank_one_selfadjoint_test(Vec(2.0 * g), g);
  REQUIRE(two.lambda);
  CHECK(*two.lambda == doctest::Approx(2.0));
  CHECK(two.agrees);

  const RankOneVerdict imag = rank_one_selfadjoint_test(Vec(cplx(0, 1) * g), g);
  CHECK_FALSE(imag.lambda);
  CHECK(imag.agrees);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Vec f = random_vec(rng, 5), h = random_vec(rng, 5);
    const RankOneVerdict v = rank_one_selfadjoint_test(f, h);
    CHECK_FALSE(v.lambda);
    CHECK(v.agrees);
    const double lambda = std::normal_distribution<double>()(rng);
    CHECK(rank_one_selfadjoint_test(Vec(lambda * h), h).lambda.has_value());
  }
  CHECK(rank_one_selfadjoint_test(Vec::Zero(3), e(3, 0)).trivial);
}

TEST_CASE("rank-two zero classification") {
  const Vec z = Vec::Zero(3);
  CHECK(rank_two_zero_classify(z, e(3, 1), e(3, 2), z).tag == RankTwoCase::zero_case1);

  const Vec phi(Vec::LinSpaced(3, 1.0, 3.0)), g(Vec::LinSpaced(3, -1.0, 2.0));
  const RankTwoVerdict c2 = rank_two_zero_classify(Vec(2.0 * phi), g, phi, Vec(-2.0 * g));
  CHECK(c2.tag == RankTwoCase::zero_case2);
  REQUIRE(c2.lambda);
  CHECK(std::abs(*c2.lambda - 2.0) < 1e-12);
  CHECK(vanishes(sum(2.0 * phi, g, phi, -2.0 * g), 1.0));

  const RankTwoVerdict nz = rank_two_zero_classify(e(3, 0), e(3, 1), e(3, 0), e(3, 1));
  CHECK(nz.tag == RankTwoCase::nonzero);
  CHECK(nz.agrees);

  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 6;
    const Vec f = random_vec(rng, n), gg = random_vec(rng, n), p = random_vec(rng, n);
    const cplx lambda(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    const Vec ff = lambda * p, ps = -std::conj(lambda) * gg;
    const RankTwoVerdict yes = rank_two_zero_classify(ff, gg, p, ps);
    CHECK(yes.claim == vanishes(sum(ff, gg, p, ps), scale_of(ff, gg, p, ps)));
    CHECK(yes.tag == RankTwoCase::zero_case2);
    const Vec q = random_vec(rng, n);
    CHECK(rank_two_zero_classify(f, gg, p, q).claim == vanishes(sum(f, gg, p, q), scale_of(f, gg, p, q)));
  }
}

TEST_CASE("rank-two self-adjoint classification") {
  const RankTwoVerdict real = rank_two_selfadjoint_classify(e(3, 0), e(3, 0), e(3, 1), e(3, 1));
  CHECK(real.tag == RankTwoCase::sa_case_I_real);
  CHECK(real.agrees);

  const Vec g(Vec::LinSpaced(3, 1.0, 3.0));
  const Vec f = cplx(1, 1) * g, psi = -g, phi = cplx(1, -1) * psi;
  const RankTwoVerdict cx = rank_two_selfadjoint_classify(f, g, phi, psi);
  CHECK(cx.tag == RankTwoCase::sa_case_I_complex);
  CHECK(hermitian(sum(f, g, phi, psi), scale_of(f, g, phi, psi)));
  REQUIRE(cx.a);
  CHECK(std::abs(*cx.a - 1.0) < 1e-12);

  const RankTwoVerdict skew = rank_two_selfadjoint_classify(e(3, 0), e(3, 1), e(3, 1), Vec(-e(3, 0)));
  CHECK(skew.tag == RankTwoCase::not_self_adjoint);
  CHECK_FALSE(hermitian(sum(e(3, 0), e(3, 1), e(3, 1), -e(3, 0)), 1.0));
  CHECK(skew.agrees);

  const RankTwoVerdict sym = rank_two_selfadjoint_classify(e(3, 0), e(3, 1), e(3, 1), e(3, 0));
  CHECK(sym.tag == RankTwoCase::sa_case_II);
  REQUIRE(sym.a_ij);
  CHECK(std::abs((*sym.a_ij)[1] - 1.0) < 1e-12);
  CHECK(std::abs((*sym.a_ij)[2] - 1.0) < 1e-12);

  std::mt19937_64 rng(23);
  std::normal_distribution<double> d;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 7;
    const Vec a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n), w = random_vec(rng, n);
    // Self-adjoint by construction: real combinations of Hermitian pieces.
    const double r1 = d(rng), r2 = d(rng);
    const Vec sf = a + r1 * b, sg = b, sp = b, sq = a;  // a b* + b a* + r1 b b*
    const Vec tf = r2 * c, tg = c, tp = w, tq = -r1 * w;  // r2 c c* - r1 w w*
    const Vec* cases[][4] = {{&sf, &sg, &sp, &sq}, {&tf, &tg, &tp, &tq}, {&a, &b, &c, &w}};
    for (const auto& q : cases) {
      const RankTwoVerdict v = rank_two_selfadjoint_classify(*q[0], *q[1], *q[2], *q[3]);
      if (v.tag == RankTwoCase::ill_conditioned) continue;
      const bool oracle = hermitian(sum(*q[0], *q[1], *q[2], *q[3]), scale_of(*q[0], *q[1], *q[2], *q[3]));
      CHECK(v.claim == oracle);
      CHECK(v.agrees);
    }
  }
}

TEST_CASE("dependence ratio") {
  const Vec x = Vec::LinSpaced(4, 1.0, 4.0);
  CHECK(dependence_ratio(x, cplx(0, 3) * x) < 1e-15);
  CHECK(dependence_ratio(e(4, 0), e(4, 1)) == doctest::Approx(1.0));
  CHECK(dependence_ratio(x, Vec::Zero(4)) == 0.0);

  Vec a(1), b(1);
  a << cplx(2, 1);
  b << cplx(-1, 3);
  CHECK(dependence_ratio(a, b) == 0.0);
  const RankTwoVerdict one = rank_two_selfadjoint_classify(a, Vec(cplx(0.5) * a), b, Vec(cplx(-3) * b));
  CHECK(one.tag == RankTwoCase::sa_case_I_real);
  CHECK(one.residuals.at("dependence_fg") == 0.0);
}
