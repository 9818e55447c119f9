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

#ifndef PPINV_FIELD_HPP
#define PPINV_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppinv/error.hpp"

namespace ppinv {

using Code = std::uint32_t;

/**
 * Element of F_{q^n} in its canonical integer encoding
 *   code = sum_i digit_i * q^i,  digit_i = sum_j d_ij * p^j,
 * so the base-p digits of the code are the F_p coordinates in the basis
 * gamma^i * beta^j (index i*m + j), and the base-q digits are the F_q
 * coordinates in the basis gamma^i.
 */
struct Elem {
    Code code = 0;

    friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

/// Scalar level of a linear structure: F_p (p-polynomials) or F_q (q-polynomials).
enum class Level : unsigned char { prime, base };

inline constexpr std::uint64_t default_desk_limit = std::uint64_t{1} << 20;

/// b^e, throwing Errc::overflow if the result does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e);

bool is_prime(std::uint64_t v);

class FieldTower {
   public:
    /**
     * Builds F_p < F_q = F_{p^m} < F_{q^n}. Moduli are ascending coefficient
     * lists including the leading 1 (mod_qn coefficients are F_q codes).
     * Omitted moduli default to the monic irreducible with the smallest
     * integer code sum_i c_i b^i over its non-leading coefficients.
     */
    static FieldTower build(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                            std::optional<std::vector<Code>> mod_q = std::nullopt,
                            std::optional<std::vector<Code>> mod_qn = std::nullopt,
                            std::uint64_t desk_limit = default_desk_limit);

    std::uint32_t p() const noexcept;
    std::uint32_t m() const noexcept;
    std::uint32_t n() const noexcept;
    std::uint32_t q() const noexcept;
    std::uint64_t size() const noexcept;
    const std::vector<Code>& mod_q() const noexcept;
    const std::vector<Code>& mod_qn() const noexcept;

    std::uint64_t desk_limit() const noexcept;
    bool desk_scale() const noexcept { return size() <= desk_limit(); }
    /// Throws Errc::desk_scale_exceeded when the field is too large to enumerate.
    void require_desk_scale(std::string_view what) const;

    /// Same parameters and moduli, hence the same encoding.
    bool same_as(const FieldTower& other) const noexcept;

    /// Canonical spec string p:m:n:modq=...:modqn=...
    std::string spec() const;

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }
    /// Validates a code; out-of-range codes raise Errc::tower_mismatch.
    Elem element(std::uint64_t code) const;
    /// Image of the integer k in F_p.
    Elem from_int(std::int64_t k) const noexcept;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    /// Strict inverse, Errc::division_by_zero on 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    /// a^{q^n - 2}: the inverse for a != 0 and 0 for a = 0.
    Elem safe_inv(Elem a) const noexcept;
    /// a^e with 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// a^{q^i}, i reduced mod n.
    Elem frobenius(Elem a, std::uint64_t i) const noexcept;
    /// a^{p^i}, i reduced mod mn.
    Elem frobenius_p(Elem a, std::uint64_t i) const noexcept;
    /// Frobenius of the given level: q-power for base, p-power for prime.
    Elem frobenius(Elem a, Level level, std::uint64_t i) const noexcept;

    /// Relative trace and norm of F_{q^n} over F_q.
    Elem trace(Elem a) const noexcept;
    Elem norm(Elem a) const noexcept;
    /// N_{q|p}(y) = y^{(q-1)/(p-1)}, mapping F_q into F_p.
    Elem absolute_norm(Elem y) const noexcept;

    bool in_base(Elem a) const noexcept { return a.code < q(); }
    bool in_prime(Elem a) const noexcept { return a.code < p(); }
    bool in_level(Elem a, Level level) const noexcept {
        return level == Level::base ? in_base(a) : in_prime(a);
    }

    /// All elements in ascending code order.
    std::vector<Elem> elements() const;

    /// Coordinate count over the level's scalars: n or m*n.
    unsigned dim(Level level) const noexcept;
    /// Scalar field size of the level: q or p.
    std::uint32_t scalar_count(Level level) const noexcept;
    /// t-th fixed basis element (gamma^t for base, gamma^i beta^j for prime).
    Elem basis(Level level, unsigned t) const noexcept;
    std::vector<Elem> coordinates(Elem a, Level level) const;
    Elem from_coordinates(std::span<const Elem> coords, Level level) const;

    /// n x m digit matrix (SubElem digits per F_q digit).
    std::vector<std::vector<Code>> digits(Elem a) const;
    Elem from_digits(const std::vector<std::vector<Code>>& d) const;

    /// True when log/antilog tables back the arithmetic.
    bool tabulated() const noexcept;
    /// Reference digit-level multiplication, independent of the tables.
    Elem mul_reference(Elem a, Elem b) const noexcept;
    /// Reference digit-level addition, independent of the tables.
    Elem add_reference(Elem a, Elem b) const noexcept;

    struct Impl;

   private:
    explicit FieldTower(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Parses p:m:n[:modq=c0,c1,...][:modqn=e0,e1,...].
FieldTower parse_field_spec(std::string_view text, std::uint64_t desk_limit = default_desk_limit);

/// Element bound to its tower; mixing towers raises Errc::tower_mismatch.
class Value {
   public:
    Value(const FieldTower& f, Elem e) : f_(&f), e_(e) {}

    Elem elem() const noexcept { return e_; }
    const FieldTower& tower() const noexcept { return *f_; }

    Value pow(std::uint64_t e) const { return {*f_, f_->pow(e_, e)}; }
    Value inv() const { return {*f_, f_->inv(e_)}; }
    Value safe_inv() const { return {*f_, f_->safe_inv(e_)}; }

    friend Value operator+(const Value& a, const Value& b) { return {*a.f_, a.f_->add(a.e_, check(a, b))}; }
    friend Value operator-(const Value& a, const Value& b) { return {*a.f_, a.f_->sub(a.e_, check(a, b))}; }
    friend Value operator*(const Value& a, const Value& b) { return {*a.f_, a.f_->mul(a.e_, check(a, b))}; }
    friend Value operator/(const Value& a, const Value& b) { return {*a.f_, a.f_->div(a.e_, check(a, b))}; }
    friend Value operator-(const Value& a) { return {*a.f_, a.f_->neg(a.e_)}; }
    friend bool operator==(const Value& a, const Value& b) { return a.e_ == check(a, b); }

   private:
    static Elem check(const Value& a, const Value& b) {
        if (a.f_ != b.f_ && !a.f_->same_as(*b.f_))
            throw Error(Errc::tower_mismatch, "operands belong to different towers");
        return b.e_;
    }

    const FieldTower* f_;
    Elem e_;
};

}  // namespace ppinv

#endif
