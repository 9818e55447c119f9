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

#ifndef PPINV_POLY_HPP
#define PPINV_POLY_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ppinv/field.hpp"

namespace ppinv {

/// Dense polynomial over F_{q^n}, ascending degree, no trailing zeros.
struct Poly {
    std::vector<Elem> coeffs;

    static Poly constant(Elem c);
    static Poly x() { return monomial(Elem{1}, 1); }
    static Poly monomial(Elem c, std::uint64_t k);

    bool is_zero() const noexcept { return coeffs.empty(); }
    /// Degree, or -1 for the zero polynomial.
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    Elem coeff(std::uint64_t k) const noexcept { return k < coeffs.size() ? coeffs[k] : Elem{0}; }

    friend bool operator==(const Poly&, const Poly&) = default;
};

using UnaryMap = std::function<Elem(Elem)>;

Poly trimmed(Poly f);
/// Folds exponents with x^{q^n} = x and trims; the canonical form.
Poly reduce(const FieldTower& F, const Poly& f);
Poly poly_add(const FieldTower& F, const Poly& f, const Poly& g);
Poly poly_scale(const FieldTower& F, const Poly& f, Elem c);

Elem eval(const FieldTower& F, const Poly& f, Elem a);
/// Values at every field element, indexed by code.
std::vector<Elem> evaluate_all(const FieldTower& F, const Poly& f);
std::vector<Elem> evaluate_all(const FieldTower& F, const UnaryMap& f);

/// Polynomial of degree < #points through the points; Errc::duplicate_node on repeated abscissae.
Poly interpolate(const FieldTower& F, std::span<const std::pair<Elem, Elem>> points);
/// Canonical polynomial with the given value table (values[code]).
Poly interpolate_values(const FieldTower& F, std::span<const Elem> values);
/// Canonical polynomial of a map given as an evaluation procedure.
Poly interpolate_map(const FieldTower& F, const UnaryMap& f);

Poly compose_mod(const FieldTower& F, const Poly& f, const Poly& g);
bool is_permutation(const FieldTower& F, const Poly& f);
/// Inverse value table of a permutation; Errc::not_permutation with a colliding point as witness.
std::vector<Elem> inverse_table(const FieldTower& F, std::span<const Elem> values);
Poly brute_inverse(const FieldTower& F, const Poly& f);
bool functions_equal(const FieldTower& F, const Poly& f, const Poly& g);

/// Inverse of a map restricted to a domain that it sends bijectively onto a codomain.
class RestrictedInverse {
   public:
    RestrictedInverse() = default;
    explicit RestrictedInverse(std::vector<std::pair<Elem, Elem>> sorted_pairs) : pairs_(std::move(sorted_pairs)) {}

    /// Preimage of y; Errc::not_bijective_on_domain if y is outside the codomain.
    Elem lookup(Elem y) const;
    bool covers(Elem y) const noexcept;
    /// (codomain value, domain preimage) sorted by codomain value.
    const std::vector<std::pair<Elem, Elem>>& pairs() const noexcept { return pairs_; }
    /// Interpolant agreeing with the table on the codomain and vanishing elsewhere.
    Poly to_poly(const FieldTower& F) const;

   private:
    std::vector<std::pair<Elem, Elem>> pairs_;
};

RestrictedInverse restricted_inverse_table(const FieldTower& F, const UnaryMap& f, std::span<const Elem> domain,
                                           std::span<const Elem> codomain);
RestrictedInverse restricted_inverse_table(const FieldTower& F, const Poly& f, std::span<const Elem> domain,
                                           std::span<const Elem> codomain);

}  // namespace ppinv

#endif
