// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "hardylab/symbol.hpp"

namespace hardylab {

// Symbol description format:
//   {"kind":"blaschke","zeros":[{"re":0.5,"im":0.0}],"unimodular":{"re":1.0,"im":0.0}}
//   {"kind":"laurent","coeffs":[{"n":-1,"re":1.0,"im":0.0}, ...]}
//   {"kind":"constant","value":{"re":..,"im":..}}
//   {"kind":"monomial","n":3}
//   {"kind":"sum","terms":[...]}        {"kind":"product","factors":[...]}
//   {"kind":"conjugate","arg":{...}}    {"kind":"scale","factor":{..},"arg":{...}}
// Complex values may also be written as bare numbers.

SymbolExpr symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const SymbolExpr& e);

cplx complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cplx c);

nlohmann::json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& coeffs);

}  // namespace hardylab
