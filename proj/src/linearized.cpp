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

#include "ppinv/linearized.hpp"

#include <algorithm>
#include <unordered_set>

namespace ppinv {

namespace {

Elem minus_one_pow(const FieldTower& F, std::uint64_t e) { return e % 2 == 0 ? F.one() : F.neg(F.one()); }

Matrix minor_without(const Matrix& A, std::size_t row, std::size_t col) {
    Matrix M(A.rows() - 1, A.cols() - 1);
    for (std::size_t i = 0, mi = 0; i < A.rows(); ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, mj = 0; j < A.cols(); ++j) {
            if (j == col) continue;
            M(mi, mj++) = A(i, j);
        }
        ++mi;
    }
    return M;
}

struct Leveled {
    LinPoly L;
    SubspaceBasis V, W;
};

Leveled lift(const FieldTower& F, const LinPoly& L, const SubspaceBasis& V, const SubspaceBasis& W) {
    Level level = (L.level == Level::prime || V.level() == Level::prime || W.level() == Level::prime) ? Level::prime
                                                                                                       : Level::base;
    return {to_level(F, L, level), to_level(F, V, level), to_level(F, W, level)};
}

}  // namespace

Elem lin_determinant(const FieldTower& F, const LinPoly& L) { return determinant(F, dickson_matrix(F, L)); }

LinPoly lin_inverse_full(const FieldTower& F, const LinPoly& L) {
    Matrix D = dickson_matrix(F, L);
    Elem det = determinant(F, D);
    if (det.code == 0) {
        auto ker = kernel(F, L).basis_elements(F);
        throw Error(Errc::singular_dickson, "Dickson matrix is singular",
                    ker.empty() ? std::nullopt : std::optional<std::uint32_t>(ker.front().code));
    }
    const std::size_t N = D.rows();
    Elem det_inv = F.inv(det);
    LinPoly R{L.level, std::vector<Elem>(N)};
    if (N == 1) {
        R.coeffs[0] = det_inv;
        return R;
    }
    for (std::size_t i = 0; i < N; ++i) {
        Elem cof = F.mul(minus_one_pow(F, i), determinant(F, minor_without(D, i, 0)));
        R.coeffs[i] = F.mul(cof, det_inv);
    }
    return R;
}

std::optional<Elem> bijection_witness(const FieldTower& F, const LinPoly& L0, const SubspaceBasis& V0,
                                      const SubspaceBasis& W0) {
    auto [L, V, W] = lift(F, L0, V0, W0);
    if (!F.desk_scale()) {
        auto bad = intersect(F, kernel(F, L), V).basis_elements(F);
        if (!bad.empty()) return bad.front();
        if (!(image_of(F, L, V) == W) || V.dim() != W.dim()) {
            auto vb = V.basis_elements(F);
            return vb.empty() ? W.basis_elements(F).front() : vb.front();
        }
        return std::nullopt;
    }
    std::unordered_set<Code> seen;
    for (Elem v : V.elements(F)) {
        Elem y = lin_eval(F, L, v);
        if (!W.contains(F, y) || !seen.insert(y.code).second) return v;
    }
    if (V.dim() != W.dim())
        for (Elem w : W.elements(F))
            if (!seen.count(w.code)) return w;
    return std::nullopt;
}

bool check_lin_bijection_criteria(const FieldTower& F, const LinPoly& phi0, const LinPoly& psi0,
                                  const LinPoly& psibar0, BijectionMode mode) {
    Level level = common_level(phi0, psi0) == Level::prime ? Level::prime : common_level(psi0, psibar0);
    LinPoly phi = to_level(F, phi0, level), psi = to_level(F, psi0, level), psibar = to_level(F, psibar0, level);
    if (!(lin_compose(F, phi, psi) == lin_compose(F, psibar, phi)))
        throw Error(Errc::hypothesis_violated, "phi o psi differs from psibar o phi");
    SubspaceBasis im_psi = image(F, psi), im_psibar = image(F, psibar);
    if (im_psi.dim() != im_psibar.dim())
        throw Error(Errc::hypothesis_violated, "psi and psibar have images of different sizes");
    SubspaceBasis ker_phi = kernel(F, phi);
    bool criterion = intersect(F, ker_phi, kernel(F, psi)).dim() == 0;
    bool exhaustive = false;
    if (mode == BijectionMode::full_field) {
        criterion = criterion && intersect(F, ker_phi, im_psi).dim() == 0;
        exhaustive = !bijection_witness(F, phi, SubspaceBasis::full(F, level), SubspaceBasis::full(F, level));
    } else {
        SubspaceBasis S = s_psi(F, psi), Sbar = s_psi(F, psibar);
        if (S.dim() != Sbar.dim())
            throw Error(Errc::hypothesis_violated, "S_psi and S_psibar have different sizes");
        criterion = criterion && intersect(F, ker_phi, image_of(F, psi, S)).dim() == 0;
        exhaustive = !bijection_witness(F, phi, S, Sbar);
    }
    if (criterion != exhaustive)
        throw Error(Errc::internal, "kernel criterion disagrees with the exhaustive bijection test");
    return criterion;
}

LinPoly subspace_inverse(const FieldTower& F, const LinPoly& phi0, const SubspaceBasis& V0,
                         const SubspaceBasis& Vbar0) {
    auto [phi, V, Vbar] = lift(F, phi0, V0, Vbar0);
    if (V.dim() != Vbar.dim()) throw Error(Errc::not_bijective_on_subspace, "V and Vbar differ in dimension");
    if (auto w = bijection_witness(F, phi, V, Vbar))
        throw Error(Errc::not_bijective_on_subspace, "phi does not biject V onto Vbar", w->code);

    // The complement im(K) must contain ker(phi), otherwise R o phi = id - K
    // has no solution; phi is injective on V so the two can be joined.
    auto ker_basis = kernel(F, phi).basis_elements(F);
    LinPoly K = projection_idempotent(F, V, ker_basis);
    LinPoly rhs = lin_sub(F, lin_identity(F, phi.level), K);
    auto c = solve(F, transpose(dickson_matrix(F, phi)), rhs.coeffs);
    if (!c) throw Error(Errc::no_solution, "cbar D_phi = v(id - K) is inconsistent");
    LinPoly R{phi.level, std::move(*c)};
    for (Elem v : V.basis_elements(F))
        if (lin_eval(F, R, lin_eval(F, phi, v)) != v)
            throw Error(Errc::no_solution, "solution fails on a basis vector of V", v.code);
    return R;
}

std::string_view strategy_name(SolveStrategy s) noexcept {
    switch (s) {
        case SolveStrategy::gauss: return "gauss";
        case SolveStrategy::ntt: return "ntt";
        case SolveStrategy::gauss_fallback: return "gauss-fallback";
    }
    return "unknown";
}

std::vector<Elem> ntt(const FieldTower& E, const std::vector<Elem>& x, Elem w) {
    const std::size_t N = x.size();
    if (N <= 1) return x;
    std::size_t r = 2;
    while (N % r != 0) ++r;
    if (r == N) {
        std::vector<Elem> out(N, Elem{0});
        for (std::size_t j = 0; j < N; ++j) {
            Elem wj = E.pow(w, j), t{1};
            for (std::size_t k = 0; k < N; ++k) {
                out[j] = E.add(out[j], E.mul(x[k], t));
                t = E.mul(t, wj);
            }
        }
        return out;
    }
    // Decimation in time: N = r * M, x_s[i] = x[i r + s].
    const std::size_t M = N / r;
    std::vector<std::vector<Elem>> parts(r);
    Elem wr = E.pow(w, r);
    for (std::size_t s = 0; s < r; ++s) {
        std::vector<Elem> sub(M);
        for (std::size_t i = 0; i < M; ++i) sub[i] = x[i * r + s];
        parts[s] = ntt(E, sub, wr);
    }
    std::vector<Elem> out(N, Elem{0});
    for (std::size_t k = 0; k < N; ++k) {
        Elem wk = E.pow(w, k), t{1};
        for (std::size_t s = 0; s < r; ++s) {
            out[k] = E.add(out[k], E.mul(t, parts[s][k % M]));
            t = E.mul(t, wk);
        }
    }
    return out;
}

namespace {

// Element of order exactly N in E (N divides |E| - 1).
Elem root_of_unity(const FieldTower& E, std::uint64_t N) {
    const std::uint64_t order = E.size() - 1;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d = 2, v = N; v > 1; ++d)
        if (v % d == 0) {
            primes.push_back(d);
            while (v % d == 0) v /= d;
        }
    for (std::uint64_t g = 1; g < E.size(); ++g) {
        Elem w = E.pow(Elem{static_cast<Code>(g)}, order / N);
        bool exact = true;
        for (auto r : primes)
            if (E.pow(w, N / r) == E.one()) exact = false;
        if (exact) return w;
    }
    throw Error(Errc::no_suitable_root, "no root of unity of the required order");
}

// Solves c (*) a = b (cyclic) in E; entries where A vanishes take C = 0.
std::optional<std::vector<Elem>> solve_convolution(const FieldTower& E, const std::vector<Elem>& a,
                                                   const std::vector<Elem>& b, Elem w) {
    const std::size_t N = a.size();
    auto A = ntt(E, a, w);
    auto B = ntt(E, b, w);
    std::vector<Elem> C(N, Elem{0});
    for (std::size_t j = 0; j < N; ++j) {
        if (A[j].code == 0) {
            if (B[j].code != 0) return std::nullopt;
            continue;
        }
        C[j] = E.div(B[j], A[j]);
    }
    auto c = ntt(E, C, E.inv(w));
    Elem n_inv = E.inv(E.from_int(static_cast<std::int64_t>(N)));
    for (auto& v : c) v = E.mul(v, n_inv);
    return c;
}

}  // namespace

CirculantInverse circulant_subspace_inverse(const FieldTower& F, const LinPoly& phi, const SubspaceBasis& V,
                                            const SubspaceBasis& Vbar) {
    if (phi.level != Level::base || V.level() != Level::base || Vbar.level() != Level::base)
        throw Error(Errc::hypothesis_violated, "the circulant path works on q-polynomials and F_q-subspaces");
    if (!coefficients_in(F, phi, Level::base))
        throw Error(Errc::hypothesis_violated, "phi has coefficients outside F_q");
    const unsigned n = F.n();
    if (n % F.p() == 0) throw Error(Errc::no_suitable_root, "p divides n, no n-th roots of unity exist");
    if (V.dim() != Vbar.dim()) throw Error(Errc::not_bijective_on_subspace, "V and Vbar differ in dimension");
    if (auto w = bijection_witness(F, phi, V, Vbar))
        throw Error(Errc::not_bijective_on_subspace, "phi does not biject V onto Vbar", w->code);

    auto ker_basis = kernel(F, phi).basis_elements(F);
    LinPoly K = projection_idempotent(F, V, ker_basis);
    std::vector<Elem> rhs = lin_sub(F, lin_identity(F), K).coeffs;

    auto fallback = [&](unsigned k) {
        return CirculantInverse{subspace_inverse(F, phi, V, Vbar), SolveStrategy::gauss_fallback, k};
    };

    CirculantInverse out{lin_zero(F), SolveStrategy::ntt, 0};
    if ((F.size() - 1) % n == 0) {
        // The roots of unity already lie in F_{q^n}: transform directly.
        unsigned k = 1;
        while ((checked_pow(F.q(), k) - 1) % n != 0) ++k;
        Elem w = root_of_unity(F, n);
        auto c = solve_convolution(F, phi.coeffs, rhs, w);
        if (!c) return fallback(k);
        out.inverse.coeffs = std::move(*c);
        out.root_degree = k;
    } else {
        unsigned k = 0;
        for (unsigned t = 1; t <= 8; ++t) {
            std::uint64_t qk = checked_pow(F.q(), t);
            if ((qk - 1) % n == 0) {
                k = t;
                break;
            }
        }
        if (k == 0) throw Error(Errc::no_suitable_root, "no n-th root of unity in F_{q^k} for k <= 8");
        // Split into F_q coordinates and transform each in F_{q^k}, which
        // shares the encoding of F_q because it uses the same mod_q.
        FieldTower E = FieldTower::build(F.p(), F.m(), k, F.mod_q(), std::nullopt, F.desk_limit());
        E.require_desk_scale("root-of-unity extension");
        Elem w = root_of_unity(E, n);
        std::vector<std::vector<Elem>> coords(n);
        for (unsigned i = 0; i < n; ++i) coords[i] = F.coordinates(rhs[i], Level::base);
        std::vector<std::vector<Elem>> sol(n, std::vector<Elem>(n));
        for (unsigned t = 0; t < n; ++t) {
            std::vector<Elem> bt(n);
            for (unsigned i = 0; i < n; ++i) bt[i] = coords[i][t];
            auto c = solve_convolution(E, phi.coeffs, bt, w);
            if (!c) return fallback(k);
            for (unsigned i = 0; i < n; ++i) {
                if (!E.in_base((*c)[i])) throw Error(Errc::internal, "transform solution left F_q");
                sol[i][t] = (*c)[i];
            }
        }
        for (unsigned i = 0; i < n; ++i) out.inverse.coeffs[i] = F.from_coordinates(sol[i], Level::base);
        out.root_degree = k;
    }
    for (Elem v : V.basis_elements(F))
        if (lin_eval(F, out.inverse, lin_eval(F, phi, v)) != v)
            throw Error(Errc::no_solution, "transform solution fails on a basis vector of V", v.code);
    return out;
}

bool is_idempotent(const FieldTower& F, const LinPoly& psi) { return lin_compose(F, psi, psi) == psi; }

boost::multiprecision::cpp_int count_idempotents(unsigned n, std::uint64_t q) {
    using boost::multiprecision::cpp_int;
    auto gl = [q](unsigned k) {
        cpp_int r = 1, qk = boost::multiprecision::pow(cpp_int(q), k);
        for (unsigned i = 0; i < k; ++i) r *= qk - boost::multiprecision::pow(cpp_int(q), i);
        return r;
    };
    cpp_int total = 0, gn = gl(n);
    for (unsigned k = 0; k <= n; ++k) total += gn / (gl(k) * gl(n - k));
    return total;
}

FieldTower default_tower(std::uint64_t q, unsigned n) {
    std::uint64_t p = 2;
    while (p <= q && q % p != 0) ++p;
    unsigned m = 0;
    std::uint64_t v = q;
    while (v > 1 && v % p == 0) {
        v /= p;
        ++m;
    }
    if (q < 2 || v != 1 || !is_prime(p)) throw Error(Errc::not_prime, "q=" + std::to_string(q) + " is not a prime power");
    return FieldTower::build(static_cast<std::uint32_t>(p), m, n);
}

std::vector<LinPoly> enumerate_idempotents(const FieldTower& F) {
    const unsigned n = F.n();
    const std::uint64_t total = checked_pow(F.q(), std::uint64_t{n} * n);
    if (total > F.desk_limit())
        throw Error(Errc::desk_scale_exceeded, "q^{n^2} = " + std::to_string(total) + " matrices is too many to enumerate");
    std::vector<LinPoly> out;
    Matrix M(n, n);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t u = t;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                M(i, j) = Elem{static_cast<Code>(u % F.q())};
                u /= F.q();
            }
        if (!(mat_mul(F, M, M) == M)) continue;
        LinPoly L = matrix_to_linpoly(F, LinMapMatrix{Level::base, M});
        if (!is_idempotent(F, L)) throw Error(Errc::internal, "lifted idempotent matrix is not idempotent");
        out.push_back(std::move(L));
    }
    return out;
}

LinPoly pc_poly(const FieldTower& F, Elem c) {
    return lin_add(F, lin_monomial(F, Level::prime, 1, F.one()), lin_monomial(F, Level::prime, 0, c));
}

PcKernelInverse pc_kernel_inverse(const FieldTower& F, Elem c) {
    if (c.code == 0) throw Error(Errc::zero_c, "P_c needs c != 0");
    if (!F.in_base(c)) throw Error(Errc::hypothesis_violated, "c must lie in F_q", c.code);
    const unsigned p = F.p(), m = F.m(), n = F.n(), mn = m * n;
    const std::uint64_t q = F.q();
    const Elem sign_m = minus_one_pow(F, m);
    const Elem c_inv = F.inv(c);

    if (F.absolute_norm(c) == sign_m && n % p != 0) {
        // Case 1 with delta = 0: d_{km+j} = n^{-1} a_j (0 - k).
        Elem n_inv = F.inv(F.from_int(n));
        LinPoly R = lin_zero(F, Level::prime);
        for (unsigned j = 0; j < m; ++j) {
            Elem aj = F.mul(minus_one_pow(F, j), F.pow(c_inv, (checked_pow(p, j + 1) - 1) / (p - 1)));
            for (unsigned k = 0; k < n; ++k)
                R.coeffs[k * m + j] = F.mul(F.mul(n_inv, aj), F.neg(F.from_int(k)));
        }
        return {PcCase::case1, R};
    }
    Elem cn = F.pow(c, n * ((q - 1) / (p - 1)));
    if (cn != minus_one_pow(F, mn)) {
        Elem denom = F.add(cn, minus_one_pow(F, mn - 1));
        Elem denom_inv = F.inv(denom);
        LinPoly R = lin_zero(F, Level::prime);
        for (unsigned i = 0; i < mn; ++i) {
            // sum_{j=i+1}^{mn-1} p^j = (p^{mn} - p^{i+1}) / (p - 1)
            std::uint64_t e = (checked_pow(p, mn) - checked_pow(p, i + 1)) / (p - 1);
            R.coeffs[i] = F.mul(F.mul(minus_one_pow(F, i), F.pow(c, e)), denom_inv);
        }
        return {PcCase::case2, R};
    }
    return {PcCase::not_permutation, std::nullopt};
}

LinPoly pc_inverse_char2_odd(const FieldTower& F, Elem c) {
    if (F.p() != 2 || F.n() % 2 == 0)
        throw Error(Errc::hypothesis_violated, "the explicit shape needs q even and n odd");
    if (c.code == 0) throw Error(Errc::zero_c, "P_c needs c != 0");
    const unsigned m = F.m(), n = F.n(), mn = m * n;
    Elem c_inv = F.inv(c);
    LinPoly R = lin_zero(F, Level::prime);
    for (unsigned j = 0; j < m; ++j) {
        Elem w = F.pow(c_inv, checked_pow(2, j + 1) - 1);
        for (unsigned k = 0; k <= (n - 1) / 2; ++k) {
            unsigned idx = (2 * k * m + j) % mn;
            R.coeffs[idx] = F.add(R.coeffs[idx], w);
        }
    }
    return R;
}

LinPoly ker_trace_alpha_inverse(const FieldTower& F, Elem alpha) {
    Elem t = F.trace(alpha);
    if (t.code == 0) throw Error(Errc::trace_zero, "T(alpha) = 0, x^q - x is not injective on ker(T_alpha)", alpha.code);
    Elem t_inv = F.inv(t);
    LinPoly R = lin_zero(F);
    Elem partial{0};
    for (unsigned k = 0; k < F.n(); ++k) {
        partial = F.add(partial, F.frobenius(alpha, k));
        R.coeffs[k] = F.mul(t_inv, partial);
    }
    return R;
}

}  // namespace ppinv
