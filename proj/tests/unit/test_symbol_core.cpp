// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/error.hpp"
#include "hardylab/symbol.hpp"
#include "hardylab/symbol_json.hpp"
#include "oracle.hpp"

using namespace hardylab;

namespace {

// Coefficient-by-coefficient convolution, independent of the library's product.
LaurentPoly convolve(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> c(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (int i = a.min_freq(); i <= a.max_freq(); ++i)
    for (int j = b.min_freq(); j <= b.max_freq(); ++j) c[i + j - a.min_freq() - b.min_freq()] += a.coeff(i) * b.coeff(j);
  return LaurentPoly(a.min_freq() + b.min_freq(), c);
}

cplx blaschke_value(cplx alpha, cplx w) { return (alpha - w) / (1.0 - std::conj(alpha) * w); }

}  // namespace

TEST_CASE("laurent products and conjugates") {
  const LaurentPoly z = LaurentPoly::monomial(1), zb = LaurentPoly::monomial(-1);
  CHECK(laurent_multiply(z, zb) == LaurentPoly::constant(1.0));
  CHECK(laurent_multiply(LaurentPoly::monomial(2, 2.0), LaurentPoly::monomial(-2, 0.5)) == LaurentPoly::constant(1.0));
  const LaurentPoly one_z = LaurentPoly::from_terms({{0, 1}, {1, 1}});
  CHECK(one_z * one_z.conjugate() == LaurentPoly::from_terms({{-1, 1}, {0, 2}, {1, 1}}));

  CHECK(laurent_conjugate(z) == zb);
  CHECK(laurent_conjugate(LaurentPoly::constant({2, 3})) == LaurentPoly::constant({2, -3}));
  CHECK(laurent_conjugate(LaurentPoly::from_terms({{0, 0.5}, {1, -0.75}, {2, -0.375}})) ==
        LaurentPoly::from_terms({{0, 0.5}, {-1, -0.75}, {-2, -0.375}}));
  // z * (z - z) collapses to the zero polynomial.
  CHECK((z * (z - z)).empty());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const LaurentPoly a = oracle::random_poly(rng, -3, 2), b = oracle::random_poly(rng, -1, 4),
                      c = oracle::random_poly(rng, 0, 3);
    const double scale = a.l1_norm() * b.l1_norm() * c.l1_norm();
    CHECK((a * b - convolve(a, b)).max_abs() <= 1e-14 * a.l1_norm() * b.l1_norm());
    CHECK((a * b - b * a).max_abs() <= 1e-14 * a.l1_norm() * b.l1_norm());
    CHECK(((a * b) * c - a * (b * c)).max_abs() <= 1e-14 * scale);
    CHECK(a.conjugate().conjugate() == a);
  }
}

TEST_CASE("analytic split") {
  const LaurentPoly x = LaurentPoly::from_terms({{-1, 1}, {0, 2}, {1, 1}});
  const AnalyticSplit s = analytic_split(x);
  CHECK(s.plus == LaurentPoly::from_terms({{0, 2}, {1, 1}}));
  CHECK(s.minus == LaurentPoly::monomial(-1));
  CHECK(analytic_split(LaurentPoly::monomial(3)).minus.empty());

  // conj(f) + conj(mu) conj(theta) with f = -mu theta has no coanalytic part.
  const cplx mu(0.6, 0.8);
  const LaurentPoly theta = LaurentPoly::from_terms({{2, 1}});
  const LaurentPoly f = -mu * theta;
  CHECK(analytic_split(f.conjugate() + std::conj(mu) * theta.conjugate()).minus.empty());

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const LaurentPoly a = oracle::random_poly(rng, -4, 4);
    const AnalyticSplit p = analytic_split(a);
    CHECK(p.plus + p.minus == a);
    CHECK(analytic_split(p.minus).plus.empty());
    CHECK(analytic_split(p.plus).minus.empty());
    CHECK(analytic_split(p.plus).plus == p.plus);
  }
}

TEST_CASE("blaschke truncation") {
  const CertifiedTruncation b = blaschke_truncate(BlaschkeProduct({0.5}), 3);
  CHECK((b.poly - LaurentPoly::from_terms({{0, 0.5}, {1, -0.75}, {2, -0.375}})).max_abs() < 1e-15);
  // Tail of (alpha - z)/(1 - alpha z) past z^2: (1 - a^2) a^(n-1) / (1 - a) with n = 3.
  CHECK(b.tail_l1 == doctest::Approx(0.375).epsilon(1e-12));

  const CertifiedTruncation zero = blaschke_truncate(BlaschkeProduct({0.0}), 5);
  CHECK(zero.poly == LaurentPoly::monomial(1, -1.0));
  CHECK(zero.tail_l1 == 0.0);

  const CertifiedTruncation two = blaschke_truncate(BlaschkeProduct({0.5, 0.5}), 2);
  CHECK(std::abs(two.poly.coeff(0) - 0.25) < 1e-15);
  CHECK(std::abs(two.poly.coeff(1) + 0.75) < 1e-15);
  // Oracle: product of two long single-factor truncations.
  const CertifiedTruncation one = blaschke_truncate(BlaschkeProduct({0.5}), 200);
  const LaurentPoly sq = convolve(one.poly, one.poly).restrict(0, 199);
  const CertifiedTruncation two_long = blaschke_truncate(BlaschkeProduct({0.5, 0.5}), 200);
  CHECK((two_long.poly - sq).max_abs() < 1e-14);
  CHECK((sq.restrict(2, 199)).l1_norm() <= two.tail_l1);

  // Truncation consistency across lengths.
  const BlaschkeProduct bp({cplx(0.3, -0.4), cplx(-0.7, 0.1)}, std::polar(1.0, 0.9));
  const CertifiedTruncation s10 = blaschke_truncate(bp, 10), s40 = blaschke_truncate(bp, 40);
  CHECK(s40.poly.restrict(0, 9) == s10.poly);
  CHECK(s40.poly.restrict(10, 39).l1_norm() <= s10.tail_l1);

  CHECK_THROWS_AS(BlaschkeProduct({1.0}), Error);
}

TEST_CASE("expression truncation") {
  const SymbolExpr z = SymbolExpr::monomial(1);
  const CertifiedTruncation e = expr_truncate(std::sqrt(2.0) * z + conj(z), 10);
  CHECK(e.tail_l1 == 0.0);
  CHECK(e.poly == LaurentPoly::from_terms({{1, std::sqrt(2.0)}, {-1, 1}}));
  CHECK(expr_truncate(conj(conj(z)), 4).poly == LaurentPoly::monomial(1));

  const SymbolExpr theta = SymbolExpr::blaschke(BlaschkeProduct({0.5}));
  const SymbolExpr phi = std::sqrt(2.0) * theta + conj(theta);
  const CertifiedTruncation t40 = expr_truncate(phi, 40), t200 = expr_truncate(phi, 200);
  CHECK(t40.tail_l1 <= (std::sqrt(2.0) + 1) * 1.5 * std::pow(0.5, 39) * (1 + 1e-12));
  CHECK((t200.poly - t40.poly).l1_norm() <= t40.tail_l1);

  const CertifiedTruncation tt = truncate_to_tail(phi, 1e-9);
  CHECK(tt.tail_l1 <= 1e-9);
  CHECK_THROWS_AS(truncate_to_tail(SymbolExpr::blaschke(BlaschkeProduct({0.999})), 1e-15, 64), Error);
}

TEST_CASE("grid evaluation and innerness") {
  const std::vector<cplx> ones = eval_grid(LaurentPoly::constant(1.0), 4);
  for (cplx v : ones) CHECK(std::abs(v - 1.0) < 1e-15);
  const std::vector<cplx> zv = eval_grid(LaurentPoly::monomial(1), 4);
  const cplx expect[] = {1.0, {0, 1}, -1.0, {0, -1}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(zv[j] - expect[j]) < 1e-15);
  CHECK_THROWS_AS(eval_grid(LaurentPoly::monomial(3), 6), Error);

  const CertifiedTruncation b = blaschke_truncate(BlaschkeProduct({0.5}), 60);
  const std::vector<cplx> vals = eval_grid(b.poly, 256);
  for (int j = 0; j < 256; ++j) {
    const cplx w = std::polar(1.0, 2 * std::numbers::pi * j / 256);
    CHECK(std::abs(vals[j] - blaschke_value(0.5, w)) <= b.tail_l1 + 1e-12);
    CHECK(std::abs(std::abs(vals[j]) - 1.0) <= b.tail_l1 + 1e-12);
  }

  const InnerCheck z3 = is_inner_check(CertifiedTruncation::exact(LaurentPoly::monomial(3)), 1e-12);
  CHECK(z3.inner);
  CHECK(z3.max_deviation == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(is_inner_check(b, 1e-8).inner);
  CHECK_FALSE(is_inner_check(CertifiedTruncation::exact(LaurentPoly::monomial(1, 0.5)), 1e-8).inner);
  CHECK_FALSE(is_inner_check(CertifiedTruncation::exact(LaurentPoly::monomial(-1)), 1e-8).inner);
  CHECK_THROWS_AS(is_inner_check(blaschke_truncate(BlaschkeProduct({0.5}), 3), 0.1), Error);
}

TEST_CASE("symbol JSON") {
  const nlohmann::json j = nlohmann::json::parse(R"({"kind":"sum","terms":[
      {"kind":"scale","factor":{"re":0,"im":2},"arg":{"kind":"blaschke","zeros":[{"re":0.5,"im":0.1}]}},
      {"kind":"conjugate","arg":{"kind":"monomial","n":2}},
      {"kind":"laurent","coeffs":[{"n":-1,"re":1,"im":0}]},
      {"kind":"constant","value":3}]})");
  const SymbolExpr e = symbol_from_json(j);
  CHECK_FALSE(e.band_limited());
  const SymbolExpr back = symbol_from_json(symbol_to_json(e));
  CHECK(symbol_to_json(back) == symbol_to_json(e));
  const CertifiedTruncation a = expr_truncate(e, 30), b = expr_truncate(back, 30);
  CHECK(a.poly == b.poly);
  CHECK(a.poly.coeff(-2) == cplx(1.0));
  CHECK(a.poly.coeff(-1) == cplx(1.0));

  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(R"({"kind":"blaschke","zeros":[{"re":1.0,"im":0}]})")),
                  Error);
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(R"({"kind":"wavelet"})")), Error);
  CHECK_THROWS_AS(symbol_from_json(nlohmann::json::parse(R"({"kind":"laurent"})")), Error);
}
