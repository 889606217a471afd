// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "hardylab/projection_lab.hpp"
#include "oracle.hpp"

using namespace hardylab;

namespace {

CertifiedTruncation ex(LaurentPoly p) { return CertifiedTruncation::exact(std::move(p)); }
CertifiedTruncation terms(std::initializer_list<std::pair<int, cplx>> t) { return ex(LaurentPoly::from_terms(t)); }
CertifiedTruncation blaschke(std::vector<cplx> zeros, double target, cplx k = 1.0) {
  return truncate_to_tail(SymbolExpr::blaschke(BlaschkeProduct(std::move(zeros), k)), target);
}

}  // namespace

TEST_CASE("semicommutator and rank-one identities hold on random pairs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, -3, 4);
    const LaurentPoly g = oracle::random_poly(rng, -4, 2);
    const IdentityResidual s = semicommutator_check(ex(f), ex(g), 32);
    CHECK(s.residual <= 1e-12 * s.scale);
    const IdentityResidual r = rank1s_identity_check(ex(f), ex(g), 32);
    CHECK(r.residual <= 1e-12 * r.scale);

    // Oracle: dense matrices large enough that nothing is cut off.
    const int big = 32 + 8;
    const Eigen::MatrixXcd lhs = oracle::toeplitz(f * g, big) - oracle::toeplitz(f, big) * oracle::toeplitz(g, big);
    const Eigen::MatrixXcd rhs =
        oracle::hankel(f.conjugate(), big, big).adjoint() * oracle::hankel(g, big, big);
    CHECK((lhs - rhs).topLeftCorner(32, 32).norm() <= 1e-12 * s.scale);
  }
}

TEST_CASE("shift invariance, flip identities and diagonal projections") {
  const CertifiedTruncation phi = terms({{-2, {1, 2}}, {0, 0.5}, {3, {0, -1}}});
  CHECK(brown_halmos_check(phi, 32).residual <= 1e-13);
  for (int k = 0; k <= 8; ++k) CHECK(diagonal_projection_check(k, 16).residual == 0.0);
  const FlipResiduals fl = flip_identities(phi, 16);
  CHECK(fl.v_squared == 0.0);
  CHECK(fl.vpv == 0.0);
  CHECK(fl.vhv <= 1e-14);
}

TEST_CASE("toeplitzness test") {
  CHECK(toeplitzness_test(toeplitz_section(terms({{1, 1}, {-1, 1}}), 16)).residual == doctest::Approx(0.0));
  const FiniteSection a = toeplitz_section(terms({{1, 1}}), 16) * toeplitz_section(terms({{-1, 1}}), 16);
  CHECK(toeplitzness_test(a).residual == doctest::Approx(1.0));
}

TEST_CASE("stroethoff classification") {
  const auto z = terms({{1, 1}}), zb = terms({{-1, 1}}), zero = ex(LaurentPoly());
  ClassificationResult r = stroethoff_classify(zb, z, zb, z);
  CHECK(r.tag == TheoremTag::lemma1T);
  CHECK(r.subcase == "(1)");

  r = stroethoff_classify(z, zb, terms({{1, 0.5}}), terms({{-1, -2.0}}));
  CHECK(r.tag == TheoremTag::lemma1T);
  CHECK(r.subcase == "(2)");
  CHECK(std::abs(r.constants.at("lambda") - 2.0) < 1e-12);
  CHECK(r.residuals.at("toeplitzness") <= 1e-12);

  r = stroethoff_classify(z, zb, zero, zero);
  CHECK(r.tag == TheoremTag::none);
  CHECK(r.residuals.at("toeplitzness") == doctest::Approx(1.0));
}

TEST_CASE("self-adjoint sum classification") {
  const auto z = terms({{1, 1}}), zb = terms({{-1, 1}}), zero = ex(LaurentPoly());
  const auto x = terms({{1, 1}, {-1, 1}});

  ClassificationResult r = selfadjoint_sum_classify(x, x, zero, zero);
  CHECK(r.tag == TheoremTag::lemma2Ts);
  CHECK(r.subcase == "(2)");
  CHECK(std::abs(r.constants.at("b") - 1.0) < 1e-12);

  r = selfadjoint_sum_classify(zb, z, x, x);
  CHECK(r.tag == TheoremTag::lemma2Ts);
  CHECK(r.subcase == "(1)");

  r = selfadjoint_sum_classify(z, zb, terms({{1, 2}}), zb);
  CHECK(r.tag == TheoremTag::lemma2Ts);
  CHECK(r.subcase == "(3)(a)(i)");

  r = selfadjoint_sum_classify(terms({{0, 1}, {1, 1}}), terms({{-1, {0, 1}}, {0, {0, -1}}}), zero, zero);
  CHECK(r.tag == TheoremTag::none);
  CHECK(r.residuals.at("self_adjointness") > 0.5);
}

TEST_CASE("toeplitz product classification") {
  ClassificationResult r = toeplitz_product_classify(terms({{3, 2}}), terms({{-3, 0.5}}), 8);
  REQUIRE(r.tag == TheoremTag::main1);
  CHECK(std::abs(r.constants.at("a") - 2.0) < 1e-12);
  CHECK(r.symbols.at("theta").poly == LaurentPoly::monomial(3));
  CHECK(std::abs(r.projection->trace - 5.0) < 1e-12);

  const auto b = blaschke({0.5}, 1e-9);
  const cplx a(1, 1);
  r = toeplitz_product_classify(a * b, (1.0 / a) * conj(b), 64, 1e-6);
  REQUIRE(r.tag == TheoremTag::main1);
  CHECK(std::abs(r.constants.at("a") - std::sqrt(2.0)) < 1e-6);
  CHECK(std::abs(r.projection->trace - 63.0) < 1e-6);

  r = toeplitz_product_classify(terms({{1, 1}}), terms({{1, 1}}), 8);
  CHECK(r.tag == TheoremTag::none);
  CHECK(r.reason == "fg != 1");

  CHECK_THROWS_AS(toeplitz_product_classify(b, conj(b), 64, b.tail_l1 / 2), Error);
}

TEST_CASE("hankel product classification") {
  ClassificationResult r = hankel_product_classify(terms({{2, -1}}), terms({{-2, -1}}), 16);
  REQUIRE(r.tag == TheoremTag::thm2H);
  CHECK(std::abs(r.constants.at("mu") - 1.0) < 1e-12);
  CHECK(r.symbols.at("theta").poly == LaurentPoly::monomial(2));
  CHECK(std::abs(r.projection->trace - 2.0) < 1e-12);

  const auto b = blaschke({0.5}, 1e-12);
  r = hankel_product_classify(-1.0 * b, -1.0 * conj(b), 64, 1e-8);
  REQUIRE(r.tag == TheoremTag::thm2H);
  CHECK(std::abs(r.projection->trace - 1.0) < 1e-8);
  CHECK((r.symbols.at("theta").poly - b.poly).l1_norm() < 1e-8);

  r = hankel_product_classify(terms({{1, 1}}), terms({{-1, 2}}), 16);
  CHECK(r.tag == TheoremTag::none);
  CHECK(r.residuals.at("idem") == doctest::Approx(2.0));
}

TEST_CASE("partial isometries") {
  CHECK(partial_isometry_test(toeplitz_section(terms({{2, 1}}), 16), 1e-12).partial_isometry);
  const PartialIsometryResult h = partial_isometry_test(hankel_section(terms({{-3, 1}}), 16), 1e-12);
  CHECK(h.partial_isometry);
  CHECK(std::abs(h.star_a->trace - 3.0) < 1e-12);
  CHECK_FALSE(partial_isometry_test(toeplitz_section(terms({{1, 0.5}}), 16), 1e-12).partial_isometry);
}

TEST_CASE("cowen symbols") {
  CHECK(cowen_symbol(terms({{1, 1}}), terms({{1, 1}}), 0.0).poly == LaurentPoly::from_terms({{0, 1}, {1, 1}}));
  const auto phi = cowen_symbol(terms({{2, std::sqrt(2.0)}}), ex(LaurentPoly::constant(1 / std::sqrt(2.0))), 0.0);
  CHECK((phi.poly - LaurentPoly::from_terms({{2, std::sqrt(2.0)}, {-2, 1}})).l1_norm() < 1e-15);
  CHECK_THROWS_AS(cowen_symbol(terms({{-1, 1}}), terms({{1, 1}}), 0.0), Error);
  CHECK_THROWS_AS(cowen_symbol(terms({{1, 1}}), terms({{1, 2}}), 0.0), Error);
}

TEST_CASE("self-commutator classification") {
  ClassificationResult r = self_commutator_classify(terms({{1, 1}}), 16);
  REQUIRE(r.tag == TheoremTag::main3_case1);
  CHECK(std::abs(r.constants.at("a") - 1.0) < 1e-12);
  CHECK(std::abs(r.constants.at("b")) < 1e-12);

  r = self_commutator_classify(terms({{1, std::sqrt(2.0)}, {-1, 1}}), 16);
  REQUIRE(r.tag == TheoremTag::main3_case1);
  CHECK(std::abs(r.constants.at("a") - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(r.constants.at("b") - 1.0) < 1e-12);
  CHECK(std::abs(r.projection->trace - 1.0) < 1e-12);

  const double gamma = 2.0 - std::sqrt(3.0), c = 1.0 / (2.0 * std::sqrt(gamma));
  const auto u = terms({{2, 1}});
  const auto v = terms({{0, c}, {2, c * gamma}});
  const auto phi = u * v + conj(v);
  r = self_commutator_classify(phi, 64);
  CHECK(r.tag == TheoremTag::none);
  r = self_commutator_classify(phi, 64, 0.0, Case2Metadata{u, v, 0.0, std::nullopt});
  REQUIRE(r.tag == TheoremTag::main3_case2);
  CHECK(std::abs(r.projection->trace - 2.0) < 1e-10);
  CHECK(r.residuals.at("qq_identity") <= 1e-10);
  CHECK((r.symbols.at("h").poly - LaurentPoly::constant(0.5)).l1_norm() < 1e-10);
}

TEST_CASE("theta membership") {
  const MonomialInner z2{2, 1.0};
  const ThetaMembership inner_v = theta_membership(terms({{3, 1}}), z2, 1e-12);
  REQUIRE(inner_v.h);
  CHECK(inner_v.h->poly.l1_norm() < 1e-14);

  CHECK_FALSE(theta_membership(terms({{0, 1}, {1, 1}}), MonomialInner{1, 1.0}, 1e-9).h);

  // u = (0.5 - z) / (1 - 0.5 z), h = 0.2 (1 - 0.5 z), so Re(uh + 1) = 1.1 - 0.1 (z + zbar).
  const double c = (std::sqrt(1.3) + std::sqrt(0.9)) / 2, d = (std::sqrt(0.9) - std::sqrt(1.3)) / 2;
  const ThetaMembership tb = theta_membership(terms({{0, c}, {1, d}}), BlaschkeProduct({0.5}), 1e-10);
  REQUIRE(tb.h);
  CHECK((tb.h->poly - LaurentPoly::from_terms({{0, 0.2}, {1, -0.1}})).l1_norm() < 1e-12);
  CHECK_FALSE(theta_membership(terms({{0, c}, {1, d}}), BlaschkeProduct({0.4}), 1e-10).h);
}

TEST_CASE("kz identity orientation") {
  KzResult k = kz_identity_check(0.0, 32, 1e-10);
  CHECK(k.satisfied == "swapped");
  CHECK(k.residual_swapped == 0.0);
  CHECK(k.residual_as_written == doctest::Approx(1.0));

  k = kz_identity_check(0.5, 64, 1e-6);
  CHECK(k.satisfied == "swapped");
  CHECK(k.residual_swapped <= 1e-6);
  CHECK_THROWS_AS(kz_identity_check(0.9, 64, 1e-6), Error);
}
