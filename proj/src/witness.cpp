// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardylab/error.hpp"
#include "hardylab/polyroots.hpp"
#include "hardylab/symbol_json.hpp"

namespace hardylab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// RNG

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
    : key_(splitmix64(splitmix64(seed) ^ fnv1a(stream)) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL)) {}

std::uint64_t Rng::next() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::unit() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

cplx Rng::disk(double radius) { return std::sqrt(uniform()) * radius * unit(); }

BlaschkeProduct random_blaschke(Rng& rng, int degree, double max_radius) {
  require(degree >= 1 && degree <= 4, "random_blaschke: degree must lie in 1..4");
  require(max_radius > 0.0 && max_radius <= 0.8, "random_blaschke: max_radius must lie in (0, 0.8]");
  std::vector<cplx> zeros;
  for (int i = 0; i < degree; ++i) zeros.push_back(rng.disk(max_radius));
  const cplx kappa = rng.unit();
  return BlaschkeProduct(std::move(zeros), kappa);
}

BlaschkeProduct random_blaschke(std::uint64_t seed, int degree, double max_radius) {
  Rng rng(seed, "blaschke", 0);
  return random_blaschke(rng, degree, max_radius);
}

// ---------------------------------------------------------------------------
// Fejer-Riesz

FejerRiesz fejer_riesz(const LaurentPoly& w, double tol) {
  require(!w.empty(), "fejer_riesz: w is zero");
  const int d = w.bandwidth();
  double asym = 0.0;
  for (int n = 0; n <= d; ++n) asym = std::max(asym, std::abs(w.coeff(-n) - std::conj(w.coeff(n))));
  if (asym > 1e-12 * w.l1_norm()) fail(ErrorCode::invalid_argument, "fejer_riesz: w is not real-valued");
  double wmin = INFINITY;
  for (cplx x : eval_grid(w, default_grid_size(d))) wmin = std::min(wmin, x.real());
  if (!(wmin > tol)) fail(ErrorCode::invalid_argument, "fejer_riesz: w is not strictly positive on the grid");

  FejerRiesz out;
  out.threshold = 100.0 * 1e-10 * (2 * d + 1) * std::max(1.0, w.l1_norm());
  LaurentPoly v = LaurentPoly::constant(1.0);
  if (d > 0) {
    std::vector<cplx> c(2 * d + 1);
    for (int k = 0; k <= 2 * d; ++k) c[k] = w.coeff(k - d);
    for (cplx r : polynomial_roots(c)) {
      if (std::abs(r) < 1.0) out.inner_roots.push_back(r);
    }
    if (static_cast<int>(out.inner_roots.size()) != d)
      fail(ErrorCode::ill_conditioned, "fejer_riesz: roots do not split evenly across the circle");
    std::sort(out.inner_roots.begin(), out.inner_roots.end(),
              [](cplx a, cplx b) { return std::arg(a) < std::arg(b) || (std::arg(a) == std::arg(b) && std::abs(a) < std::abs(b)); });
    for (cplx r : out.inner_roots) v = v * LaurentPoly::from_terms({{0, 1.0}, {1, -std::conj(r)}});
  }
  v *= std::sqrt(w.coeff(0).real()) / v.l2_norm();
  out.v = v;
  const LaurentPoly vv = v * v.conjugate();
  for (cplx x : eval_grid(vv - w, default_grid_size(d))) out.residual = std::max(out.residual, std::abs(x));
  if (out.residual > out.threshold)
    fail(ErrorCode::ill_conditioned, "fejer_riesz: |v|^2 misses w by " + format_number(out.residual));
  return out;
}

// ---------------------------------------------------------------------------
// Witness construction

namespace {

SymbolExpr lp(LaurentPoly p) { return SymbolExpr::laurent(std::move(p)); }
SymbolExpr cst(cplx c) { return SymbolExpr::constant(c); }

LaurentPoly random_poly(Rng& rng, int lo, int hi, double scale = 1.0) {
  std::vector<cplx> c;
  for (int k = lo; k <= hi; ++k) c.emplace_back(scale * rng.normal(), scale * rng.normal());
  return LaurentPoly(lo, c);
}

double signed_magnitude(Rng& rng, double lo, double hi) {
  const double m = rng.uniform(lo, hi);
  return rng.uniform() < 0.5 ? -m : m;
}

struct InnerChoice {
  SymbolExpr theta;
  int degree;
  cplx gauge;  // multiplying theta by gauge makes its lowest coefficient positive
  bool band_limited;
};

InnerChoice random_inner(Rng& rng, const std::string& family, const WitnessSpec& spec) {
  if (family == "monomial") {
    const int m = rng.integer(1, 3);
    const cplx kappa = rng.unit();
    return {SymbolExpr::scale(kappa, SymbolExpr::monomial(m)), m, std::conj(kappa), true};
  }
  require(family == "blaschke", "unknown inner family '" + family + "'");
  const BlaschkeProduct b = random_blaschke(rng, rng.integer(1, std::min(spec.max_degree, 4)), spec.max_radius);
  cplx lead = b.unimodular();
  int origin = 0;
  for (cplx a : b.zeros()) {
    if (a == 0.0)
      ++origin;
    else
      lead *= a;
  }
  // A zero at the origin contributes -z; its lowest coefficient is -1.
  if (origin % 2) lead = -lead;
  return {SymbolExpr::blaschke(b), b.degree(), std::abs(lead) / lead, false};
}

double factor_for(const WitnessSpec& spec, const std::string& parameter) {
  if (spec.perturbation && spec.perturbation->parameter == parameter) return spec.perturbation->factor;
  return 1.0;
}

void check_perturbation(const WitnessSpec& spec, std::initializer_list<const char*> allowed) {
  if (!spec.perturbation) return;
  for (const char* a : allowed)
    if (spec.perturbation->parameter == a) return;
  fail(ErrorCode::invalid_argument, "parameter '" + spec.perturbation->parameter + "' cannot be perturbed for " +
                                        to_string(spec.theorem));
}

void make_main1(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"a"});
  const InnerChoice in = random_inner(rng, w.family, spec);
  const double r = rng.uniform(0.5, 3.0);
  const cplx a = r * rng.unit();
  w.band_limited = in.band_limited;
  w.params = {{"a", a}};
  w.symbols.insert_or_assign("theta", in.theta);
  w.symbols.insert_or_assign("f", SymbolExpr::scale(factor_for(spec, "a") * a, in.theta));
  w.symbols.insert_or_assign("g", SymbolExpr::scale(1.0 / a, conj(in.theta)));
  w.expected.tag = TheoremTag::main1;
  w.expected.constants = {{"a", r}};
  w.expected.theta = SymbolExpr::scale(a / r, in.theta);
  w.expected.degree = in.degree;
  w.expected.complement = true;
}

void make_thm2h(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"mu"});
  const InnerChoice in = random_inner(rng, w.family, spec);
  const cplx mu = rng.uniform(0.5, 2.0) * rng.unit();
  const int bw = rng.integer(0, spec.max_bandwidth);
  const LaurentPoly p1 = random_poly(rng, 0, bw, 0.5);
  const LaurentPoly p2 = random_poly(rng, 0, bw, 0.5);
  w.band_limited = in.band_limited;
  w.params = {{"mu", mu}};
  w.symbols.insert_or_assign("theta", in.theta);
  w.symbols.insert_or_assign("f", SymbolExpr::scale(-mu, in.theta) + conj(lp(p1)));
  w.symbols.insert_or_assign("g", SymbolExpr::scale(-1.0 / (factor_for(spec, "mu") * mu), conj(in.theta)) + lp(p2));
  w.expected.tag = TheoremTag::thm2H;
  w.expected.constants = {{"mu", mu * std::conj(in.gauge)}};
  w.expected.theta = SymbolExpr::scale(in.gauge, in.theta);
  w.expected.degree = in.degree;
}

void make_main3_case1(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"b"});
  const InnerChoice in = random_inner(rng, w.family, spec);
  const double rb = rng.uniform(0.5, 1.5);
  const cplx b = rb * rng.unit();
  const cplx a = std::sqrt(1.0 + rb * rb) * rng.unit();
  const cplx c(rng.normal(), rng.normal());
  w.band_limited = in.band_limited;
  w.params = {{"a", a}, {"b", b}, {"c", c}};
  w.symbols.insert_or_assign("theta", in.theta);
  w.symbols.insert_or_assign(
      "phi", SymbolExpr::scale(a, in.theta) + SymbolExpr::scale(factor_for(spec, "b") * b, conj(in.theta)) + cst(c));
  w.expected.tag = TheoremTag::main3_case1;
  w.expected.constants = {{"a", a * std::conj(in.gauge)}, {"b", b * in.gauge}, {"c", c}};
  w.expected.theta = SymbolExpr::scale(in.gauge, in.theta);
  w.expected.degree = in.degree;
}

// Small analytic h with ||h||_1 < 1, so 1 + Re(u h) stays positive.
LaurentPoly case2_h(std::uint64_t k) {
  switch (k % 5) {
    case 0: return LaurentPoly::constant(0.5);
    case 1: return LaurentPoly::monomial(1, 0.3);
    case 2: return LaurentPoly::from_terms({{0, 0.25}, {1, 0.25}});
    case 3: return LaurentPoly::from_terms({{0, 0.2}, {2, -0.15}});
    default: return LaurentPoly::constant(cplx(0.0, 0.4));
  }
}

void make_main3_case2(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"v"});
  require(w.family == "monomial", "main3_case2 witnesses use u = z^m");
  const int m = 1 + static_cast<int>((spec.index / 5) % 3);
  const LaurentPoly h = case2_h(spec.index);
  const LaurentPoly uh = h.shifted(m);
  const LaurentPoly wpoly = LaurentPoly::constant(1.0) + 0.5 * (uh + uh.conjugate());
  const LaurentPoly v = fejer_riesz(wpoly, 1e-6).v;
  const cplx c(rng.normal(), rng.normal());
  const SymbolExpr u = SymbolExpr::monomial(m);
  const SymbolExpr vs = lp(v);
  const SymbolExpr vp = SymbolExpr::scale(factor_for(spec, "v"), vs);
  w.params = {{"c", c}};
  w.symbols.insert_or_assign("u", u);
  w.symbols.insert_or_assign("v", vs);
  w.symbols.insert_or_assign("phi", u * vp + conj(vp) + cst(c));
  w.expected.tag = TheoremTag::main3_case2;
  w.expected.constants = {{"c", c}};
  w.expected.h = h;
  w.expected.degree = m;
}

void make_lemma1t(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"lambda"});
  const int bw = rng.integer(1, spec.max_bandwidth);
  w.expected.tag = TheoremTag::lemma1T;
  w.expected.subcase = w.family;
  if (w.family == "(1)") {
    require(!spec.perturbation, "lemma1T family (1) has no perturbable parameter");
    // conj(f) analytic or g analytic, and conj(phi) analytic or psi analytic.
    const bool left = rng.uniform() < 0.5, right = rng.uniform() < 0.5;
    w.symbols.insert_or_assign("f", left ? conj(lp(random_poly(rng, 0, bw))) : lp(random_poly(rng, -bw, bw)));
    w.symbols.insert_or_assign("g", left ? lp(random_poly(rng, -bw, bw)) : lp(random_poly(rng, 0, bw)));
    w.symbols.insert_or_assign("phi", right ? conj(lp(random_poly(rng, 0, bw))) : lp(random_poly(rng, -bw, bw)));
    w.symbols.insert_or_assign("psi", right ? lp(random_poly(rng, -bw, bw)) : lp(random_poly(rng, 0, bw)));
    return;
  }
  require(w.family == "(2)", "unknown lemma1T family '" + w.family + "'");
  // f - lambda phi coanalytic, psi + lambda g analytic.
  const cplx lambda = rng.uniform(0.5, 2.0) * rng.unit();
  const LaurentPoly phi = random_poly(rng, -bw, bw), g = random_poly(rng, -bw, bw);
  w.params = {{"lambda", lambda}};
  w.symbols.insert_or_assign("phi", lp(phi));
  w.symbols.insert_or_assign("g", lp(g));
  w.symbols.insert_or_assign("f", SymbolExpr::scale(factor_for(spec, "lambda") * lambda, lp(phi)) + conj(lp(random_poly(rng, 0, bw))));
  w.symbols.insert_or_assign("psi", SymbolExpr::scale(-lambda, lp(g)) + lp(random_poly(rng, 0, bw)));
  w.expected.constants = {{"lambda", lambda}};
}

void make_lemma2ts(Witness& w, Rng& rng, const WitnessSpec& spec) {
  check_perturbation(spec, {"imag_shift"});
  const cplx shift(0.0, factor_for(spec, "imag_shift") - 1.0);
  const int bw = rng.integer(w.family == "(3)(b)" ? 2 : 1, std::max(spec.max_bandwidth, 2));
  w.expected.tag = TheoremTag::lemma2Ts;
  w.expected.subcase = w.family;
  if (w.family == "(1)" || w.family == "(2)") {
    // One pair has a coanalytic first factor and an analytic second factor
    // with real product; the other is (k conj(x), x) with k real.
    const double k = signed_magnitude(rng, 0.5, 2.0);
    const double r = signed_magnitude(rng, 0.5, 2.0);
    const LaurentPoly x = random_poly(rng, -bw, bw);
    const LaurentPoly p = random_poly(rng, 0, bw);
    const SymbolExpr first = SymbolExpr::scale(k + shift, conj(lp(x)));
    const std::string name = w.family == "(1)" ? "a" : "b";
    w.params = {{name, k}};
    w.expected.constants = {{name, k}};
    if (w.family == "(1)") {
      w.symbols = {{"f", conj(lp(p))}, {"g", SymbolExpr::scale(r, lp(p))}, {"phi", first}, {"psi", lp(x)}};
    } else {
      w.symbols = {{"f", first}, {"g", lp(x)}, {"phi", conj(lp(p))}, {"psi", SymbolExpr::scale(r, lp(p))}};
    }
    return;
  }
  const LaurentPoly g = random_poly(rng, -bw, bw);
  if (w.family == "(3)(a)(i)") {
    const double lambda = signed_magnitude(rng, 0.5, 2.0), mu = signed_magnitude(rng, 0.5, 2.0);
    const LaurentPoly psi = random_poly(rng, -bw, bw);
    w.params = {{"lambda", lambda}, {"mu", mu}};
    w.expected.constants = w.params;
    w.symbols = {{"f", SymbolExpr::scale(lambda + shift, conj(lp(g)))},
                 {"g", lp(g)},
                 {"phi", SymbolExpr::scale(mu, conj(lp(psi)))},
                 {"psi", lp(psi)}};
    return;
  }
  if (w.family == "(3)(a)(ii)") {
    cplx lambda, mu, c;
    for (;;) {
      lambda = rng.uniform(0.5, 2.0) * std::polar(1.0, rng.uniform(0.2, std::numbers::pi - 0.2));
      mu = rng.uniform(0.5, 2.0) * std::polar(1.0, -rng.uniform(0.2, std::numbers::pi - 0.2));
      if (rng.uniform() < 0.5) {
        lambda = std::conj(lambda);
        mu = std::conj(mu);
      }
      const double c2 = -lambda.imag() / mu.imag();
      c = std::sqrt(c2) * rng.unit();
      if (std::abs(lambda.real() + c2 * mu.real()) >= 0.1) break;
    }
    w.params = {{"lambda", lambda}, {"mu", mu}, {"c", c}};
    w.expected.constants = w.params;
    const SymbolExpr psi = SymbolExpr::scale(-c, lp(g));
    w.symbols = {{"f", SymbolExpr::scale(std::conj(lambda) + shift, conj(lp(g)))},
                 {"g", lp(g)},
                 {"phi", SymbolExpr::scale(std::conj(mu), conj(psi))},
                 {"psi", psi}};
    return;
  }
  require(w.family == "(3)(b)", "unknown lemma2Ts family '" + w.family + "'");
  const LaurentPoly f = random_poly(rng, -bw, bw);
  const cplx e = rng.unit();
  const double r1 = signed_magnitude(rng, 0.5, 1.5), r2 = signed_magnitude(rng, 0.5, 1.5);
  const double s2 = signed_magnitude(rng, 0.5, 1.5), s1 = (1.0 + r1 * s2) / r2;
  const cplx a11 = e * r1 + shift, a12 = e * r2, a21 = e * s1, a22 = e * s2;
  w.params = {{"a11", a11}, {"a12", a12}, {"a21", a21}, {"a22", a22}};
  w.expected.constants = w.params;
  w.symbols = {{"f", lp(f)},
               {"g", lp(g)},
               {"phi", SymbolExpr::scale(a11, lp(f)) + SymbolExpr::scale(a12, conj(lp(g)))},
               {"psi", SymbolExpr::scale(std::conj(a21), conj(lp(f))) + SymbolExpr::scale(std::conj(a22), lp(g))}};
}

}  // namespace

std::vector<std::string> witness_families(TheoremTag t) {
  switch (t) {
    case TheoremTag::main1:
    case TheoremTag::thm2H:
    case TheoremTag::main3_case1: return {"monomial", "blaschke"};
    case TheoremTag::main3_case2: return {"monomial"};
    case TheoremTag::lemma1T: return {"(1)", "(2)"};
    case TheoremTag::lemma2Ts: return {"(1)", "(2)", "(3)(a)(i)", "(3)(a)(ii)", "(3)(b)"};
    default: return {};
  }
}

Witness make_case(const WitnessSpec& spec) {
  const auto families = witness_families(spec.theorem);
  require(!families.empty(), std::string("no witnesses for theorem ") + to_string(spec.theorem));
  require(spec.max_degree >= 1 && spec.max_degree <= 4, "max_degree must lie in 1..4");
  require(spec.max_bandwidth >= 1 && spec.max_bandwidth <= 4, "max_bandwidth must lie in 1..4");
  Witness w;
  w.theorem = spec.theorem;
  w.seed = spec.seed;
  w.index = spec.index;
  w.tail_target = spec.tail_target;
  w.perturbation = spec.perturbation;
  w.family = spec.family.empty() ? families[spec.index % families.size()] : spec.family;
  if (std::find(families.begin(), families.end(), w.family) == families.end())
    fail(ErrorCode::invalid_argument, "unknown family '" + w.family + "' for " + to_string(spec.theorem));
  Rng rng(spec.seed, std::string(to_string(spec.theorem)) + "/" + w.family, spec.index);
  switch (spec.theorem) {
    case TheoremTag::main1: make_main1(w, rng, spec); break;
    case TheoremTag::thm2H: make_thm2h(w, rng, spec); break;
    case TheoremTag::main3_case1: make_main3_case1(w, rng, spec); break;
    case TheoremTag::main3_case2: make_main3_case2(w, rng, spec); break;
    case TheoremTag::lemma1T: make_lemma1t(w, rng, spec); break;
    case TheoremTag::lemma2Ts: make_lemma2ts(w, rng, spec); break;
    default: break;
  }
  if (spec.perturbation && std::abs(spec.perturbation->factor - 1.0) > 0.0) {
    w.expected.tag = TheoremTag::none;
    w.expected.subcase.clear();
  }
  return w;
}

double Witness::expected_trace(int n) const {
  if (!expected.degree) return 0.0;
  return expected.complement ? n - *expected.degree : *expected.degree;
}

CertifiedTruncation Witness::truncated(const std::string& name) const {
  const auto it = symbols.find(name);
  require(it != symbols.end(), "witness has no symbol '" + name + "'");
  return truncate_to_tail(it->second, tail_target);
}

std::optional<Case2Metadata> Witness::case2_metadata() const {
  if (!symbols.count("u") || !symbols.count("v")) return std::nullopt;
  const auto c = params.find("c");
  return Case2Metadata{truncated("u"), truncated("v"), c == params.end() ? cplx(0.0) : c->second, std::nullopt};
}

ClassificationResult classify_witness(const Witness& w, int n, double tol) {
  switch (w.theorem) {
    case TheoremTag::main1: return toeplitz_product_classify(w.truncated("f"), w.truncated("g"), n, tol);
    case TheoremTag::thm2H: return hankel_product_classify(w.truncated("f"), w.truncated("g"), n, tol);
    case TheoremTag::main3_case1:
    case TheoremTag::main3_case2: return self_commutator_classify(w.truncated("phi"), n, tol, w.case2_metadata());
    case TheoremTag::lemma1T:
      return stroethoff_classify(w.truncated("f"), w.truncated("g"), w.truncated("phi"), w.truncated("psi"), n, tol);
    case TheoremTag::lemma2Ts:
      return selfadjoint_sum_classify(w.truncated("f"), w.truncated("g"), w.truncated("phi"), w.truncated("psi"), n,
                                      tol);
    default: fail(ErrorCode::invalid_argument, "witness has no classifier");
  }
}

// ---------------------------------------------------------------------------
// JSON

json witness_to_json(const Witness& w) {
  json j;
  j["theorem"] = to_string(w.theorem);
  j["family"] = w.family;
  j["seed"] = w.seed;
  j["index"] = w.index;
  j["band_limited"] = w.band_limited;
  j["tail_target"] = w.tail_target;
  j["symbols"] = json::object();
  for (const auto& [k, s] : w.symbols) j["symbols"][k] = symbol_to_json(s);
  j["params"] = json::object();
  for (const auto& [k, c] : w.params) j["params"][k] = complex_to_json(c);
  j["perturbation"] = w.perturbation ? json{{"parameter", w.perturbation->parameter}, {"factor", w.perturbation->factor}}
                                     : json(nullptr);
  json e;
  e["tag"] = to_string(w.expected.tag);
  e["subcase"] = w.expected.subcase;
  e["degree"] = w.expected.degree ? json(*w.expected.degree) : json(nullptr);
  e["complement"] = w.expected.complement;
  e["constants"] = json::object();
  for (const auto& [k, c] : w.expected.constants) e["constants"][k] = complex_to_json(c);
  e["theta"] = w.expected.theta ? symbol_to_json(*w.expected.theta) : json(nullptr);
  e["h"] = w.expected.h ? laurent_to_json(*w.expected.h) : json(nullptr);
  j["expected"] = e;
  return j;
}

Witness witness_from_json(const json& j) {
  try {
    Witness w;
    const auto tag = theorem_from_string(j.at("theorem").get<std::string>());
    if (!tag) fail(ErrorCode::parse, "witness JSON: unknown theorem");
    w.theorem = *tag;
    w.family = j.at("family").get<std::string>();
    w.seed = j.at("seed").get<std::uint64_t>();
    w.index = j.at("index").get<std::uint64_t>();
    w.band_limited = j.at("band_limited").get<bool>();
    w.tail_target = j.at("tail_target").get<double>();
    for (const auto& [k, s] : j.at("symbols").items()) w.symbols.emplace(k, symbol_from_json(s));
    for (const auto& [k, c] : j.at("params").items()) w.params[k] = complex_from_json(c);
    if (!j.at("perturbation").is_null())
      w.perturbation = Perturbation{j["perturbation"].at("parameter").get<std::string>(),
                                    j["perturbation"].at("factor").get<double>()};
    const json& e = j.at("expected");
    const auto etag = theorem_from_string(e.at("tag").get<std::string>());
    if (!etag) fail(ErrorCode::parse, "witness JSON: unknown expected tag");
    w.expected.tag = *etag;
    w.expected.subcase = e.at("subcase").get<std::string>();
    if (!e.at("degree").is_null()) w.expected.degree = e["degree"].get<int>();
    w.expected.complement = e.at("complement").get<bool>();
    for (const auto& [k, c] : e.at("constants").items()) w.expected.constants[k] = complex_from_json(c);
    if (!e.at("theta").is_null()) w.expected.theta = symbol_from_json(e["theta"]);
    if (!e.at("h").is_null()) w.expected.h = laurent_from_json(e["h"]);
    return w;
  } catch (const json::exception& ex) {
    fail(ErrorCode::parse, std::string("witness JSON: ") + ex.what());
  }
}

}  // namespace hardylab
