// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/error.hpp"

namespace hardylab {

// ---------------------------------------------------------------------------
// BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx unimodular)
    : zeros_(std::move(zeros)), unimodular_(unimodular) {
  for (cplx a : zeros_)
    if (!(std::abs(a) <= kZeroRadiusGuard))
      fail(ErrorCode::invalid_argument, "Blaschke zero at radius " + format_number(std::abs(a)) +
                                            " exceeds the guard 1 - 1e-6");
  if (!(std::abs(std::abs(unimodular_) - 1.0) <= 1e-14))
    fail(ErrorCode::invalid_argument, "Blaschke unimodular factor must have modulus 1");
}

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx v = unimodular_;
  for (cplx a : zeros_) v *= (a - z) / (1.0 - std::conj(a) * z);
  return v;
}

double BlaschkeProduct::l1_bound() const {
  double b = 1.0;
  for (cplx a : zeros_) b *= (1.0 + std::abs(a)) / (1.0 - std::abs(a));
  return b;
}

namespace {

struct FactorSeries {
  LaurentPoly poly;
  double tail = 0.0;
  double l1_bound = 1.0;
};

// (a - z)/(1 - conj(a) z) = a + sum_{k>=1} conj(a)^{k-1} (|a|^2 - 1) z^k
FactorSeries single_factor(cplx a, int n) {
  std::vector<cplx> c(static_cast<std::size_t>(n));
  c[0] = a;
  const double r = std::abs(a);
  const cplx ab = std::conj(a);
  cplx pw = 1.0;
  for (int k = 1; k < n; ++k) {
    c[k] = pw * (r * r - 1.0);
    pw *= ab;
  }
  FactorSeries out;
  out.poly = LaurentPoly(0, std::move(c));
  out.tail = (1.0 + r) * std::pow(r, n - 1);
  out.l1_bound = (1.0 + r) / (1.0 - r);
  return out;
}

}  // namespace

CertifiedTruncation blaschke_truncate(const BlaschkeProduct& b, int n) {
  require(n >= 1, "blaschke_truncate: truncation length must be positive");
  LaurentPoly acc = LaurentPoly::constant(1.0);
  double tail = 0.0;
  for (cplx a : b.zeros()) {
    const FactorSeries f = single_factor(a, n);
    const LaurentPoly full = acc * f.poly;
    const LaurentPoly kept = full.restrict(0, n - 1);
    const double dropped = (full - kept).l1_norm();
    tail = dropped + tail * f.l1_bound + acc.l1_norm() * f.tail;
    acc = kept;
  }
  return {acc * b.unimodular(), tail};
}

// ---------------------------------------------------------------------------
// CertifiedTruncation arithmetic

CertifiedTruncation operator+(const CertifiedTruncation& a, const CertifiedTruncation& b) {
  return {a.poly + b.poly, a.tail_l1 + b.tail_l1};
}

CertifiedTruncation operator-(const CertifiedTruncation& a, const CertifiedTruncation& b) {
  return {a.poly - b.poly, a.tail_l1 + b.tail_l1};
}

CertifiedTruncation operator*(const CertifiedTruncation& a, const CertifiedTruncation& b) {
  // (A + ta)(B + tb) - AB = A tb + ta B + ta tb
  const double tail = a.tail_l1 * (b.poly.l1_norm() + b.tail_l1) + a.poly.l1_norm() * b.tail_l1;
  return {a.poly * b.poly, tail};
}

CertifiedTruncation operator*(cplx s, const CertifiedTruncation& a) { return {s * a.poly, std::abs(s) * a.tail_l1}; }

CertifiedTruncation conj(const CertifiedTruncation& a) { return {a.poly.conjugate(), a.tail_l1}; }

// ---------------------------------------------------------------------------
// SymbolExpr

struct SymbolExpr::Node {
  Kind kind;
  cplx value = 0.0;
  int exponent = 0;
  LaurentPoly poly;
  std::vector<BlaschkeProduct> blaschke;  // zero or one element
  std::vector<SymbolExpr> children;
};

SymbolExpr SymbolExpr::constant(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::monomial(int e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::monomial;
  n->exponent = e;
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::laurent(LaurentPoly p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::laurent;
  n->poly = std::move(p);
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::blaschke(BlaschkeProduct b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::blaschke;
  n->blaschke.push_back(std::move(b));
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::sum(std::vector<SymbolExpr> terms) {
  require(!terms.empty(), "sum of zero terms");
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->children = std::move(terms);
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::product(std::vector<SymbolExpr> factors) {
  require(!factors.empty(), "product of zero factors");
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->children = std::move(factors);
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::conjugate(const SymbolExpr& e) {
  if (e.kind() == Kind::conjugate) return e.children().front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::conjugate;
  n->children = {e};
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::scale(cplx s, const SymbolExpr& e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::scale;
  n->value = s;
  n->children = {e};
  return SymbolExpr(std::move(n));
}

SymbolExpr::Kind SymbolExpr::kind() const noexcept { return node_->kind; }

cplx SymbolExpr::value() const {
  require(kind() == Kind::constant || kind() == Kind::scale, "symbol node carries no value");
  return node_->value;
}

int SymbolExpr::exponent() const {
  require(kind() == Kind::monomial, "symbol node is not a monomial");
  return node_->exponent;
}

const LaurentPoly& SymbolExpr::poly() const {
  require(kind() == Kind::laurent, "symbol node is not a Laurent polynomial");
  return node_->poly;
}

const BlaschkeProduct& SymbolExpr::blaschke() const {
  require(kind() == Kind::blaschke, "symbol node is not a Blaschke product");
  return node_->blaschke.front();
}

const std::vector<SymbolExpr>& SymbolExpr::children() const { return node_->children; }

bool SymbolExpr::band_limited() const {
  if (kind() == Kind::blaschke)
    return std::all_of(blaschke().zeros().begin(), blaschke().zeros().end(), [](cplx a) { return a == 0.0; });
  return std::all_of(children().begin(), children().end(), [](const SymbolExpr& c) { return c.band_limited(); });
}

CertifiedTruncation expr_truncate(const SymbolExpr& e, int n) {
  require(n >= 1, "expr_truncate: truncation length must be positive");
  switch (e.kind()) {
    case SymbolExpr::Kind::constant:
      return CertifiedTruncation::exact(LaurentPoly::constant(e.value()));
    case SymbolExpr::Kind::monomial:
      return CertifiedTruncation::exact(LaurentPoly::monomial(e.exponent()));
    case SymbolExpr::Kind::laurent:
      return CertifiedTruncation::exact(e.poly());
    case SymbolExpr::Kind::blaschke: {
      // Zeros at the origin are exact monomial factors; keep them out of the
      // truncation so a band-limited product stays exact.
      const auto& b = e.blaschke();
      int origin = 0;
      std::vector<cplx> rest;
      for (cplx a : b.zeros()) {
        if (a == 0.0)
          ++origin;
        else
          rest.push_back(a);
      }
      CertifiedTruncation t = rest.empty() ? CertifiedTruncation::exact(LaurentPoly::constant(b.unimodular()))
                                           : blaschke_truncate(BlaschkeProduct(rest, b.unimodular()), n);
      if (origin > 0) t.poly = t.poly.shifted(origin) * cplx(origin % 2 ? -1.0 : 1.0);
      return t;
    }
    case SymbolExpr::Kind::sum: {
      CertifiedTruncation acc;
      for (const auto& c : e.children()) acc = acc + expr_truncate(c, n);
      return acc;
    }
    case SymbolExpr::Kind::product: {
      CertifiedTruncation acc = CertifiedTruncation::exact(LaurentPoly::constant(1.0));
      for (const auto& c : e.children()) acc = acc * expr_truncate(c, n);
      return acc;
    }
    case SymbolExpr::Kind::conjugate:
      return conj(expr_truncate(e.children().front(), n));
    case SymbolExpr::Kind::scale:
      return e.value() * expr_truncate(e.children().front(), n);
  }
  fail(ErrorCode::invalid_argument, "unknown symbol node");
}

CertifiedTruncation truncate_to_tail(const SymbolExpr& e, double target, int max_len) {
  if (e.band_limited()) return expr_truncate(e, 1);
  int hi = 16;
  CertifiedTruncation best = expr_truncate(e, hi);
  while (best.tail_l1 > target) {
    if (hi >= max_len)
      fail(ErrorCode::undecidable, "no truncation up to length " + std::to_string(max_len) +
                                       " reaches tail bound " + format_number(target));
    hi = std::min(2 * hi, max_len);
    best = expr_truncate(e, hi);
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    CertifiedTruncation t = expr_truncate(e, mid);
    if (t.tail_l1 <= target) {
      hi = mid;
      best = std::move(t);
    } else {
      lo = mid;
    }
  }
  return best;
}

InnerCheck is_inner_check(const CertifiedTruncation& t, double tol) {
  if (!(tol > t.tail_l1))
    fail(ErrorCode::undecidable, "inner check: tolerance " + format_number(tol) +
                                     " does not exceed the truncation tail " + format_number(t.tail_l1));
  InnerCheck out;
  for (int n = t.poly.min_freq(); n < 0; ++n) out.max_negative_coeff = std::max(out.max_negative_coeff, std::abs(t.poly.coeff(n)));
  out.grid = default_grid_size(t.poly.bandwidth());
  for (cplx v : eval_grid(t.poly, out.grid)) out.max_deviation = std::max(out.max_deviation, std::abs(std::abs(v) - 1.0));
  out.inner = out.max_negative_coeff <= tol && out.max_deviation <= tol + t.tail_l1;
  return out;
}

ModulusRange modulus_range(const LaurentPoly& p) {
  const auto values = eval_grid(p, default_grid_size(p.bandwidth()));
  ModulusRange r{std::abs(values.front()), std::abs(values.front()), 0.0};
  for (cplx v : values) {
    const double m = std::abs(v);
    r.min = std::min(r.min, m);
    r.max = std::max(r.max, m);
    r.mean += m;
  }
  r.mean /= static_cast<double>(values.size());
  return r;
}

double sup_norm(const LaurentPoly& p) { return modulus_range(p).max; }

}  // namespace hardylab
