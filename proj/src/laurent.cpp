// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardylab/error.hpp"

namespace hardylab {

LaurentPoly::LaurentPoly(int lo, std::vector<cplx> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) { prune(); }

LaurentPoly LaurentPoly::constant(cplx c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(int n, cplx c) { return LaurentPoly(n, {c}); }

LaurentPoly LaurentPoly::from_terms(std::initializer_list<std::pair<int, cplx>> terms) {
  LaurentPoly out;
  for (const auto& [n, c] : terms) out += monomial(n, c);
  return out;
}

void LaurentPoly::prune() {
  for (auto& c : coeffs_)
    if (std::abs(c) < kDust) c = 0.0;
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c != 0.0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](cplx c) { return c != 0.0; }).base();
  lo_ += static_cast<int>(first - coeffs_.begin());
  coeffs_ = std::vector<cplx>(first, last);
}

int LaurentPoly::bandwidth() const noexcept {
  if (empty()) return 0;
  return std::max(std::abs(min_freq()), std::abs(max_freq()));
}

cplx LaurentPoly::coeff(int n) const noexcept {
  const long idx = static_cast<long>(n) - lo_;
  if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(idx)];
}

double LaurentPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (cplx c : coeffs_) s += std::abs(c);
  return s;
}

double LaurentPoly::l2_norm() const noexcept {
  double s = 0.0;
  for (cplx c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double LaurentPoly::max_abs() const noexcept {
  double s = 0.0;
  for (cplx c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

LaurentPoly LaurentPoly::conjugate() const {
  if (empty()) return {};
  std::vector<cplx> out(coeffs_.rbegin(), coeffs_.rend());
  for (auto& c : out) c = std::conj(c);
  return LaurentPoly(-max_freq(), std::move(out));
}

LaurentPoly LaurentPoly::restrict(int lo, int hi) const {
  if (empty()) return {};
  lo = std::max(lo, min_freq());
  hi = std::min(hi, max_freq());
  if (lo > hi) return {};
  return LaurentPoly(lo, std::vector<cplx>(coeffs_.begin() + (lo - lo_), coeffs_.begin() + (hi - lo_) + 1));
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out = *this;
  if (!out.empty()) out.lo_ += k;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.empty()) return *this;
  if (empty()) return *this = other;
  const int lo = std::min(min_freq(), other.min_freq());
  const int hi = std::max(max_freq(), other.max_freq());
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + (lo_ - lo)] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i + (other.lo_ - lo)] += other.coeffs_[i];
  lo_ = lo;
  coeffs_ = std::move(out);
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return *this += other * cplx(-1.0); }

LaurentPoly& LaurentPoly::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  prune();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const cplx ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += ai * b.coeffs_[j];
  }
  return LaurentPoly(a.lo_ + b.lo_, std::move(out));
}

LaurentPoly laurent_multiply(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly laurent_conjugate(const LaurentPoly& a) { return a.conjugate(); }

AnalyticSplit analytic_split(const LaurentPoly& a) {
  return {a.restrict(0, a.max_freq()), a.restrict(a.min_freq(), -1)};
}

std::vector<cplx> eval_grid(const LaurentPoly& a, int m) {
  if (m < 2 * a.bandwidth() + 1)
    fail(ErrorCode::invalid_argument, "eval_grid: grid of " + std::to_string(m) +
                                          " points aliases a symbol of bandwidth " + std::to_string(a.bandwidth()));
  std::vector<cplx> out(static_cast<std::size_t>(m), 0.0);
  if (a.empty()) return out;
  // Phases are reduced mod m in integers so w^{nj} carries no accumulated
  // rounding from large exponents.
  std::vector<cplx> roots(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * r / m);
  const auto coeffs = a.coeffs();
  for (int j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      const long n = a.min_freq() + static_cast<long>(i);
      long r = (n * j) % m;
      if (r < 0) r += m;
      acc += coeffs[i] * roots[static_cast<std::size_t>(r)];
    }
    out[j] = acc;
  }
  return out;
}

int default_grid_size(int bandwidth) { return std::max({256, 4 * bandwidth, 2 * bandwidth + 1}); }

}  // namespace hardylab
