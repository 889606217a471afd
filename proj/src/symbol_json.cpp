// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/symbol_json.hpp"

#include <string>

#include "hardylab/error.hpp"

namespace hardylab {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::parse, "symbol JSON: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<SymbolExpr> children_of(const json& j, const char* key) {
  const json& arr = field(j, key);
  if (!arr.is_array() || arr.empty()) parse_fail(std::string("'") + key + "' must be a nonempty array");
  std::vector<SymbolExpr> out;
  for (const auto& c : arr) out.push_back(symbol_from_json(c));
  return out;
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) parse_fail("complex value must be a number or {re, im}");
  const double re = j.contains("re") ? j.at("re").get<double>() : 0.0;
  const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
  return {re, im};
}

json complex_to_json(cplx c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json laurent_to_json(const LaurentPoly& p) {
  json arr = json::array();
  for (int n = p.min_freq(); !p.empty() && n <= p.max_freq(); ++n) {
    const cplx c = p.coeff(n);
    if (c == 0.0) continue;
    arr.push_back(json{{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

LaurentPoly laurent_from_json(const json& coeffs) {
  if (!coeffs.is_array()) parse_fail("'coeffs' must be an array");
  LaurentPoly p;
  for (const auto& t : coeffs) {
    if (!t.is_object() || !t.contains("n")) parse_fail("Laurent term needs 'n'");
    p += LaurentPoly::monomial(t.at("n").get<int>(), complex_from_json(t));
  }
  return p;
}

SymbolExpr symbol_from_json(const json& j) {
  try {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "blaschke") {
      std::vector<cplx> zeros;
      const json& zs = field(j, "zeros");
      if (!zs.is_array()) parse_fail("'zeros' must be an array");
      for (const auto& z : zs) zeros.push_back(complex_from_json(z));
      const cplx kappa = j.contains("unimodular") ? complex_from_json(j.at("unimodular")) : cplx(1.0);
      return SymbolExpr::blaschke(BlaschkeProduct(std::move(zeros), kappa));
    }
    if (kind == "laurent") return SymbolExpr::laurent(laurent_from_json(field(j, "coeffs")));
    if (kind == "constant") return SymbolExpr::constant(complex_from_json(field(j, "value")));
    if (kind == "monomial") return SymbolExpr::monomial(field(j, "n").get<int>());
    if (kind == "sum") return SymbolExpr::sum(children_of(j, "terms"));
    if (kind == "product") return SymbolExpr::product(children_of(j, "factors"));
    if (kind == "conjugate") return SymbolExpr::conjugate(symbol_from_json(field(j, "arg")));
    if (kind == "scale") return SymbolExpr::scale(complex_from_json(field(j, "factor")), symbol_from_json(field(j, "arg")));
    parse_fail("unknown kind '" + kind + "'");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    parse_fail(e.what());
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json symbol_to_json(const SymbolExpr& e) {
  using K = SymbolExpr::Kind;
  switch (e.kind()) {
    case K::constant:
      return json{{"kind", "constant"}, {"value", complex_to_json(e.value())}};
    case K::monomial:
      return json{{"kind", "monomial"}, {"n", e.exponent()}};
    case K::laurent:
      return json{{"kind", "laurent"}, {"coeffs", laurent_to_json(e.poly())}};
    case K::blaschke: {
      json zeros = json::array();
      for (cplx a : e.blaschke().zeros()) zeros.push_back(complex_to_json(a));
      return json{{"kind", "blaschke"}, {"zeros", zeros}, {"unimodular", complex_to_json(e.blaschke().unimodular())}};
    }
    case K::sum:
    case K::product: {
      json arr = json::array();
      for (const auto& c : e.children()) arr.push_back(symbol_to_json(c));
      return e.kind() == K::sum ? json{{"kind", "sum"}, {"terms", arr}} : json{{"kind", "product"}, {"factors", arr}};
    }
    case K::conjugate:
      return json{{"kind", "conjugate"}, {"arg", symbol_to_json(e.children().front())}};
    case K::scale:
      return json{{"kind", "scale"}, {"factor", complex_to_json(e.value())}, {"arg", symbol_to_json(e.children().front())}};
  }
  return json{};
}

}  // namespace hardylab
