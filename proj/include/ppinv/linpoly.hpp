/*
   Copyright 2026 The ppinv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PPINV_LINPOLY_HPP
#define PPINV_LINPOLY_HPP

#include <optional>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/matrix.hpp"
#include "ppinv/poly.hpp"

namespace ppinv {

/**
 * Linearized polynomial sum_i a_i x^{P^i} with P = q (base level, n
 * coefficients) or P = p (prime level, mn coefficients). Prime level
 * covers the p-polynomials, i.e. every additive map of F_{q^n}.
 */
struct LinPoly {
    Level level = Level::base;
    std::vector<Elem> coeffs;

    friend bool operator==(const LinPoly&, const LinPoly&) = default;
};

LinPoly lin_from_coeffs(const FieldTower& F, Level level, std::vector<Elem> coeffs);
LinPoly lin_zero(const FieldTower& F, Level level = Level::base);
LinPoly lin_identity(const FieldTower& F, Level level = Level::base);
/// c x^{P^i}, i reduced modulo the coefficient count.
LinPoly lin_monomial(const FieldTower& F, Level level, unsigned i, Elem c);
/// T(x) = sum_{i<n} x^{q^i}.
LinPoly lin_trace(const FieldTower& F);
/// Q(x) = x^q - x.
LinPoly lin_frobenius_minus_id(const FieldTower& F);

LinPoly lin_add(const FieldTower& F, const LinPoly& a, const LinPoly& b);
LinPoly lin_sub(const FieldTower& F, const LinPoly& a, const LinPoly& b);
/// c * L(x).
LinPoly lin_scale(const FieldTower& F, const LinPoly& L, Elem c);

/// Re-expresses L at the given level; prime to base needs support on multiples of m.
LinPoly to_level(const FieldTower& F, const LinPoly& L, Level level);
Level common_level(const LinPoly& a, const LinPoly& b) noexcept;
/// True when every coefficient lies in the level's scalar field.
bool coefficients_in(const FieldTower& F, const LinPoly& L, Level level) noexcept;

Elem lin_eval(const FieldTower& F, const LinPoly& L, Elem a);
/// phi o psi with coefficient vector v(phi) D_psi.
LinPoly lin_compose(const FieldTower& F, const LinPoly& phi, const LinPoly& psi);
/// Entry (i, k) = a_{(k - i) mod N}^{P^i}.
Matrix dickson_matrix(const FieldTower& F, const LinPoly& L);

Poly lin_to_poly(const FieldTower& F, const LinPoly& L);
/// Recognizes a linearized polynomial of the level, if f is one.
std::optional<LinPoly> poly_to_lin(const FieldTower& F, const Poly& f, Level level = Level::base);

}  // namespace ppinv

#endif
