// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hardylab/laurent.hpp"

namespace hardylab {

/// Roots of c[0] + c[1] z + ... + c[d] z^d from the eigenvalues of the
/// balanced companion matrix, each refined by a few Newton steps on the
/// original coefficients. Trailing zero coefficients are dropped.
std::vector<cplx> polynomial_roots(std::vector<cplx> c);

/// Horner evaluation of the same ascending coefficient list.
cplx polynomial_eval(const std::vector<cplx>& c, cplx z);

}  // namespace hardylab
