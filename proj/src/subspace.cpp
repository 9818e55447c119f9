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

#include "ppinv/subspace.hpp"

#include <algorithm>

namespace ppinv {

namespace {

std::vector<std::vector<Elem>> rref_rows(const FieldTower& F, unsigned cols, const std::vector<std::vector<Elem>>& rows) {
    Matrix A(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (unsigned j = 0; j < cols; ++j) A(i, j) = rows[i][j];
    std::vector<std::size_t> piv;
    Matrix R = rref(F, std::move(A), &piv);
    std::vector<std::vector<Elem>> out;
    for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(R.row(r));
    return out;
}

Elem combine(const FieldTower& F, const std::vector<Elem>& coeffs, const std::vector<Elem>& vectors) {
    Elem acc{0};
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc = F.add(acc, F.mul(coeffs[i], vectors[i]));
    return acc;
}

}  // namespace

SubspaceBasis SubspaceBasis::from_rows(const FieldTower& F, Level level, std::vector<std::vector<Elem>> rows) {
    SubspaceBasis V;
    V.level_ = level;
    V.ambient_ = F.dim(level);
    V.scalars_ = F.scalar_count(level);
    V.tower_size_ = F.size();
    for (auto& r : rows) {
        if (r.size() != V.ambient_) throw Error(Errc::tower_mismatch, "coordinate row has wrong length");
        for (Elem c : r)
            if (!F.in_level(c, level)) throw Error(Errc::tower_mismatch, "coordinate outside the scalar field");
    }
    V.rows_ = rref_rows(F, V.ambient_, rows);
    return V;
}

SubspaceBasis SubspaceBasis::span(const FieldTower& F, Level level, std::span<const Elem> generators) {
    std::vector<std::vector<Elem>> rows;
    for (Elem g : generators) rows.push_back(F.coordinates(F.element(g.code), level));
    return from_rows(F, level, std::move(rows));
}

SubspaceBasis SubspaceBasis::zero(const FieldTower& F, Level level) { return from_rows(F, level, {}); }

SubspaceBasis SubspaceBasis::full(const FieldTower& F, Level level) {
    std::vector<std::vector<Elem>> rows;
    for (unsigned t = 0; t < F.dim(level); ++t) rows.push_back(F.coordinates(F.basis(level, t), level));
    return from_rows(F, level, std::move(rows));
}

std::vector<Elem> SubspaceBasis::basis_elements(const FieldTower& F) const {
    std::vector<Elem> out;
    for (auto& r : rows_) out.push_back(F.from_coordinates(r, level_));
    return out;
}

std::uint64_t SubspaceBasis::cardinality() const { return checked_pow(scalars_, dim()); }

std::vector<Elem> SubspaceBasis::elements(const FieldTower& F) const {
    F.require_desk_scale("subspace enumeration");
    auto basis = basis_elements(F);
    const std::uint64_t total = cardinality();
    std::vector<Elem> out;
    out.reserve(total);
    std::vector<Elem> coeffs(dim(), Elem{0});
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t u = t;
        for (unsigned i = 0; i < dim(); ++i) {
            coeffs[i] = Elem{static_cast<Code>(u % scalars_)};
            u /= scalars_;
        }
        out.push_back(combine(F, coeffs, basis));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool SubspaceBasis::contains(const FieldTower& F, Elem a) const {
    auto v = F.coordinates(a, level_);
    for (auto& r : rows_) {
        std::size_t piv = 0;
        while (r[piv].code == 0) ++piv;
        Elem f = v[piv];
        if (f.code == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(f, r[j]));
    }
    return std::all_of(v.begin(), v.end(), [](Elem c) { return c.code == 0; });
}

void require_compatible(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.level_ != b.level_ || a.ambient_ != b.ambient_ || a.scalars_ != b.scalars_ || a.tower_size_ != b.tower_size_)
        throw Error(Errc::tower_mismatch, "subspaces live in different ambient spaces");
}

SubspaceBasis intersect(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b) {
    require_compatible(a, b);
    const unsigned N = a.ambient_dim();
    const std::size_t ka = a.dim(), kb = b.dim();
    // Solutions of sum_i s_i a_i - sum_j t_j b_j = 0 give the intersection.
    Matrix M(N, ka + kb);
    for (unsigned r = 0; r < N; ++r) {
        for (std::size_t i = 0; i < ka; ++i) M(r, i) = a.rows()[i][r];
        for (std::size_t j = 0; j < kb; ++j) M(r, ka + j) = F.neg(b.rows()[j][r]);
    }
    std::vector<std::vector<Elem>> rows;
    for (auto& sol : null_space(F, M)) {
        std::vector<Elem> v(N, Elem{0});
        for (std::size_t i = 0; i < ka; ++i)
            for (unsigned r = 0; r < N; ++r) v[r] = F.add(v[r], F.mul(sol[i], a.rows()[i][r]));
        rows.push_back(std::move(v));
    }
    return SubspaceBasis::from_rows(F, a.level(), std::move(rows));
}

SubspaceBasis sum(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b) {
    require_compatible(a, b);
    auto rows = a.rows();
    rows.insert(rows.end(), b.rows().begin(), b.rows().end());
    return SubspaceBasis::from_rows(F, a.level(), std::move(rows));
}

bool subspace_contains(const FieldTower& F, const SubspaceBasis& a, Elem x) { return a.contains(F, x); }

bool subspace_equal(const SubspaceBasis& a, const SubspaceBasis& b) {
    require_compatible(a, b);
    return a == b;
}

bool is_subset(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b) {
    require_compatible(a, b);
    for (Elem e : a.basis_elements(F))
        if (!b.contains(F, e)) return false;
    return true;
}

SubspaceBasis to_level(const FieldTower& F, const SubspaceBasis& V, Level level) {
    if (V.level() == level) return V;
    if (level == Level::base) throw Error(Errc::tower_mismatch, "an F_p-subspace need not be an F_q-subspace");
    std::vector<Elem> gens;
    for (Elem b : V.basis_elements(F))
        for (unsigned j = 0; j < F.m(); ++j) gens.push_back(F.mul(F.basis(Level::prime, j), b));
    return SubspaceBasis::span(F, Level::prime, gens);
}

LinMapMatrix linmap_matrix(const FieldTower& F, const LinPoly& L) {
    const unsigned N = F.dim(L.level);
    LinMapMatrix M{L.level, Matrix(N, N)};
    for (unsigned j = 0; j < N; ++j) {
        auto c = F.coordinates(lin_eval(F, L, F.basis(L.level, j)), L.level);
        for (unsigned i = 0; i < N; ++i) M.m(i, j) = c[i];
    }
    return M;
}

LinPoly matrix_to_linpoly(const FieldTower& F, const LinMapMatrix& M) {
    const unsigned N = F.dim(M.level);
    if (M.m.rows() != N || M.m.cols() != N) throw Error(Errc::tower_mismatch, "matrix has the wrong size");
    Matrix moore(N, N);
    std::vector<Elem> w(N);
    for (unsigned j = 0; j < N; ++j) {
        Elem b = F.basis(M.level, j);
        for (unsigned t = 0; t < N; ++t) moore(j, t) = F.frobenius(b, M.level, t);
        w[j] = F.from_coordinates(M.m.col(j), M.level);
    }
    auto a = solve(F, moore, w);
    if (!a || rank(F, moore) != N) throw Error(Errc::singular_basis_system, "Moore matrix of the basis is singular");
    return LinPoly{M.level, std::move(*a)};
}

LinMapMatrix linmap_product(const FieldTower& F, const LinMapMatrix& A, const LinMapMatrix& B) {
    if (A.level != B.level) throw Error(Errc::tower_mismatch, "matrices at different levels");
    return {A.level, mat_mul(F, A.m, B.m)};
}

SubspaceBasis kernel(const FieldTower& F, const LinPoly& L) {
    return SubspaceBasis::from_rows(F, L.level, null_space(F, linmap_matrix(F, L).m));
}

SubspaceBasis image(const FieldTower& F, const LinPoly& L) {
    Matrix T = transpose(linmap_matrix(F, L).m);
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < T.rows(); ++i) rows.push_back(T.row(i));
    return SubspaceBasis::from_rows(F, L.level, std::move(rows));
}

SubspaceBasis image_of(const FieldTower& F, const LinPoly& L, const SubspaceBasis& V) {
    Level level = (L.level == Level::prime || V.level() == Level::prime) ? Level::prime : Level::base;
    LinPoly M = to_level(F, L, level);
    SubspaceBasis W = to_level(F, V, level);
    std::vector<Elem> gens;
    for (Elem b : W.basis_elements(F)) gens.push_back(lin_eval(F, M, b));
    return SubspaceBasis::span(F, level, gens);
}

SubspaceBasis s_psi(const FieldTower& F, const LinPoly& psi) {
    return image(F, lin_sub(F, lin_identity(F, psi.level), psi));
}

LinPoly projection_idempotent(const FieldTower& F, const SubspaceBasis& V, std::span<const Elem> preferred) {
    const Level level = V.level();
    const unsigned N = F.dim(level);
    std::vector<std::vector<Elem>> cols = V.rows();
    const std::size_t k = cols.size();
    auto try_add = [&](const std::vector<Elem>& v) {
        auto trial = cols;
        trial.push_back(v);
        if (rref_rows(F, N, trial).size() == trial.size()) cols = std::move(trial);
    };
    for (Elem e : preferred) try_add(F.coordinates(e, level));
    for (unsigned t = 0; t < N && cols.size() < N; ++t) try_add(F.coordinates(F.basis(level, t), level));

    Matrix B(N, N);
    for (unsigned j = 0; j < N; ++j)
        for (unsigned i = 0; i < N; ++i) B(i, j) = cols[j][i];
    auto Binv = inverse(F, B);
    if (!Binv) throw Error(Errc::internal, "basis extension is singular");
    Matrix D(N, N);
    for (unsigned j = static_cast<unsigned>(k); j < N; ++j) D(j, j) = Elem{1};
    Matrix K = mat_mul(F, mat_mul(F, B, D), *Binv);
    return matrix_to_linpoly(F, LinMapMatrix{level, std::move(K)});
}

}  // namespace ppinv
