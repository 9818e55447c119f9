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

#ifndef PPINV_SUBSPACE_HPP
#define PPINV_SUBSPACE_HPP

#include <span>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/matrix.hpp"

namespace ppinv {

/**
 * Subspace of F_{q^n} over the scalars of a level, stored as the RREF of a
 * spanning set in the fixed coordinate basis. Equal subspaces compare equal.
 */
class SubspaceBasis {
   public:
    SubspaceBasis() = default;

    static SubspaceBasis span(const FieldTower& F, Level level, std::span<const Elem> generators);
    static SubspaceBasis from_rows(const FieldTower& F, Level level, std::vector<std::vector<Elem>> rows);
    static SubspaceBasis zero(const FieldTower& F, Level level = Level::base);
    static SubspaceBasis full(const FieldTower& F, Level level = Level::base);

    Level level() const noexcept { return level_; }
    unsigned ambient_dim() const noexcept { return ambient_; }
    unsigned dim() const noexcept { return static_cast<unsigned>(rows_.size()); }
    const std::vector<std::vector<Elem>>& rows() const noexcept { return rows_; }

    /// RREF rows as field elements.
    std::vector<Elem> basis_elements(const FieldTower& F) const;
    /// Every member, ascending by code.
    std::vector<Elem> elements(const FieldTower& F) const;
    /// Number of members as an integer power of the scalar count.
    std::uint64_t cardinality() const;
    bool contains(const FieldTower& F, Elem a) const;

    friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

   private:
    Level level_ = Level::base;
    unsigned ambient_ = 0;
    std::uint32_t scalars_ = 0;
    std::uint64_t tower_size_ = 0;
    std::vector<std::vector<Elem>> rows_;

    friend void require_compatible(const SubspaceBasis&, const SubspaceBasis&);
};

/// Raises Errc::tower_mismatch unless both live in the same ambient space and level.
void require_compatible(const SubspaceBasis& a, const SubspaceBasis& b);

SubspaceBasis intersect(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b);
SubspaceBasis sum(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b);
bool subspace_contains(const FieldTower& F, const SubspaceBasis& a, Elem x);
bool subspace_equal(const SubspaceBasis& a, const SubspaceBasis& b);
bool is_subset(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b);
/// Same subspace regarded over F_p (only base to prime is meaningful).
SubspaceBasis to_level(const FieldTower& F, const SubspaceBasis& V, Level level);

/// Matrix of a linear map at its level; column j holds the coordinates of L(basis_j).
struct LinMapMatrix {
    Level level = Level::base;
    Matrix m;

    friend bool operator==(const LinMapMatrix&, const LinMapMatrix&) = default;
};

LinMapMatrix linmap_matrix(const FieldTower& F, const LinPoly& L);
/// Inverse of linmap_matrix via the Moore matrix of the basis.
LinPoly matrix_to_linpoly(const FieldTower& F, const LinMapMatrix& M);
LinMapMatrix linmap_product(const FieldTower& F, const LinMapMatrix& A, const LinMapMatrix& B);

SubspaceBasis kernel(const FieldTower& F, const LinPoly& L);
SubspaceBasis image(const FieldTower& F, const LinPoly& L);
/// L(V), computed at the common level of L and V.
SubspaceBasis image_of(const FieldTower& F, const LinPoly& L, const SubspaceBasis& V);
/// S_psi = {x - psi(x)}.
SubspaceBasis s_psi(const FieldTower& F, const LinPoly& psi);

/**
 * Idempotent K with kernel V. The complement is grown greedily, first from
 * the optional preferred vectors and then from the standard basis in index
 * order; K projects along V onto that complement.
 */
LinPoly projection_idempotent(const FieldTower& F, const SubspaceBasis& V, std::span<const Elem> preferred = {});

}  // namespace ppinv

#endif
