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

#include "ppinv/linpoly.hpp"

namespace ppinv {

namespace {
std::uint64_t step(const FieldTower& F, Level level) { return level == Level::base ? F.q() : F.p(); }

void require_same_level(const LinPoly& a, const LinPoly& b) {
    if (a.level != b.level || a.coeffs.size() != b.coeffs.size())
        throw Error(Errc::tower_mismatch, "linearized polynomials of different levels");
}
}  // namespace

LinPoly lin_from_coeffs(const FieldTower& F, Level level, std::vector<Elem> coeffs) {
    if (coeffs.size() != F.dim(level))
        throw Error(Errc::tower_mismatch, "linearized polynomial needs " + std::to_string(F.dim(level)) + " coefficients");
    for (Elem c : coeffs) F.element(c.code);
    return LinPoly{level, std::move(coeffs)};
}

LinPoly lin_zero(const FieldTower& F, Level level) { return LinPoly{level, std::vector<Elem>(F.dim(level))}; }

LinPoly lin_identity(const FieldTower& F, Level level) { return lin_monomial(F, level, 0, Elem{1}); }

LinPoly lin_monomial(const FieldTower& F, Level level, unsigned i, Elem c) {
    LinPoly L = lin_zero(F, level);
    L.coeffs[i % F.dim(level)] = c;
    return L;
}

LinPoly lin_trace(const FieldTower& F) { return LinPoly{Level::base, std::vector<Elem>(F.n(), Elem{1})}; }

LinPoly lin_frobenius_minus_id(const FieldTower& F) {
    return lin_sub(F, lin_monomial(F, Level::base, 1, Elem{1}), lin_identity(F));
}

LinPoly lin_add(const FieldTower& F, const LinPoly& a, const LinPoly& b) {
    require_same_level(a, b);
    LinPoly r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

LinPoly lin_sub(const FieldTower& F, const LinPoly& a, const LinPoly& b) {
    require_same_level(a, b);
    LinPoly r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.sub(a.coeffs[i], b.coeffs[i]);
    return r;
}

LinPoly lin_scale(const FieldTower& F, const LinPoly& L, Elem c) {
    LinPoly r = L;
    for (auto& a : r.coeffs) a = F.mul(a, c);
    return r;
}

LinPoly to_level(const FieldTower& F, const LinPoly& L, Level level) {
    if (L.level == level) return L;
    if (level == Level::prime) {
        LinPoly r = lin_zero(F, Level::prime);
        for (unsigned i = 0; i < F.n(); ++i) r.coeffs[i * F.m()] = L.coeffs[i];
        return r;
    }
    LinPoly r = lin_zero(F, Level::base);
    for (unsigned t = 0; t < L.coeffs.size(); ++t) {
        if (t % F.m() == 0)
            r.coeffs[t / F.m()] = L.coeffs[t];
        else if (L.coeffs[t].code != 0)
            throw Error(Errc::hypothesis_violated, "p-polynomial is not a q-polynomial");
    }
    return r;
}

Level common_level(const LinPoly& a, const LinPoly& b) noexcept {
    return a.level == Level::prime || b.level == Level::prime ? Level::prime : Level::base;
}

bool coefficients_in(const FieldTower& F, const LinPoly& L, Level level) noexcept {
    for (Elem c : L.coeffs)
        if (!F.in_level(c, level)) return false;
    return true;
}

Elem lin_eval(const FieldTower& F, const LinPoly& L, Elem a) {
    const std::uint64_t P = step(F, L.level);
    Elem acc{0}, x = a;
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
        if (L.coeffs[i].code != 0) acc = F.add(acc, F.mul(L.coeffs[i], x));
        x = F.pow(x, P);
    }
    return acc;
}

LinPoly lin_compose(const FieldTower& F, const LinPoly& phi, const LinPoly& psi) {
    const Level level = common_level(phi, psi);
    LinPoly a = to_level(F, phi, level), b = to_level(F, psi, level);
    LinPoly r = lin_zero(F, level);
    r.coeffs = vec_mat(F, a.coeffs, dickson_matrix(F, b));
    return r;
}

Matrix dickson_matrix(const FieldTower& F, const LinPoly& L) {
    const std::size_t N = L.coeffs.size();
    Matrix D(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) D(i, k) = F.frobenius(L.coeffs[(k + N - i) % N], L.level, i);
    return D;
}

Poly lin_to_poly(const FieldTower& F, const LinPoly& L) {
    const std::uint64_t P = step(F, L.level);
    Poly f;
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < L.coeffs.size(); ++i, e *= P) {
        if (L.coeffs[i].code == 0) continue;
        if (f.coeffs.size() <= e) f.coeffs.resize(e + 1, Elem{0});
        f.coeffs[e] = L.coeffs[i];
    }
    return trimmed(std::move(f));
}

std::optional<LinPoly> poly_to_lin(const FieldTower& F, const Poly& f, Level level) {
    Poly g = reduce(F, f);
    const std::uint64_t P = step(F, level);
    LinPoly L = lin_zero(F, level);
    std::uint64_t next = 1;
    std::size_t idx = 0;
    for (std::uint64_t e = 0; e < g.coeffs.size(); ++e) {
        bool lin_degree = idx < L.coeffs.size() && e == next;
        if (lin_degree) {
            L.coeffs[idx++] = g.coeffs[e];
            next *= P;
        } else if (g.coeffs[e].code != 0) {
            return std::nullopt;
        }
    }
    return L;
}

}  // namespace ppinv
