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

#ifndef PPINV_LINEARIZED_HPP
#define PPINV_LINEARIZED_HPP

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/subspace.hpp"

namespace ppinv {

/// det(D_L) by Gaussian elimination over F_{q^n}.
Elem lin_determinant(const FieldTower& F, const LinPoly& L);

/// Full inverse from the first-column cofactors of D_L; Errc::singular_dickson if det = 0.
LinPoly lin_inverse_full(const FieldTower& F, const LinPoly& L);

/// Exhaustive test that L maps V into W injectively and onto W; returns a failing element.
std::optional<Elem> bijection_witness(const FieldTower& F, const LinPoly& L, const SubspaceBasis& V,
                                      const SubspaceBasis& W);

enum class BijectionMode { full_field, s_psi };

/**
 * Kernel criteria for phi to biject F_{q^n} (full_field) or S_psi -> S_psibar
 * (s_psi), given phi o psi = psibar o phi. Every verdict is cross-checked by
 * an exhaustive test at desk scale.
 */
bool check_lin_bijection_criteria(const FieldTower& F, const LinPoly& phi, const LinPoly& psi, const LinPoly& psibar,
                                  BijectionMode mode);

/// R with R(phi(v)) = v on V, from cbar D_phi = v(id - K) for an idempotent K with kernel V.
LinPoly subspace_inverse(const FieldTower& F, const LinPoly& phi, const SubspaceBasis& V, const SubspaceBasis& Vbar);

enum class SolveStrategy { gauss, ntt, gauss_fallback };
std::string_view strategy_name(SolveStrategy s) noexcept;

struct CirculantInverse {
    LinPoly inverse;
    SolveStrategy used = SolveStrategy::ntt;
    /// Degree k of the extension F_{q^k} holding the n-th roots of unity.
    unsigned root_degree = 0;
};

/// Same contract as subspace_inverse for phi with coefficients in F_q, solved by transforms.
CirculantInverse circulant_subspace_inverse(const FieldTower& F, const LinPoly& phi, const SubspaceBasis& V,
                                            const SubspaceBasis& Vbar);

/// Length-N transform sum_k x_k w^{jk} with w of order N (mixed radix).
std::vector<Elem> ntt(const FieldTower& E, const std::vector<Elem>& x, Elem w);

bool is_idempotent(const FieldTower& F, const LinPoly& psi);
/// sum_k |GL(n,q)| / (|GL(k,q)| |GL(n-k,q)|).
boost::multiprecision::cpp_int count_idempotents(unsigned n, std::uint64_t q);
/// All idempotent q-polynomials of F, lifted from n x n matrices over F_q.
std::vector<LinPoly> enumerate_idempotents(const FieldTower& F);
/// Default tower of order q^n for a prime power q; Errc::not_prime otherwise.
FieldTower default_tower(std::uint64_t q, unsigned n);

/// P_c(x) = x^p + c x as a p-polynomial.
LinPoly pc_poly(const FieldTower& F, Elem c);

enum class PcCase { case1, case2, not_permutation };

struct PcKernelInverse {
    PcCase tag = PcCase::not_permutation;
    /// Prime-level inverse on ker(T); absent for not_permutation.
    std::optional<LinPoly> inverse;
};

PcKernelInverse pc_kernel_inverse(const FieldTower& F, Elem c);
/// The explicit shape sum_j c^{-(2^{j+1}-1)} (sum_{k<=(n-1)/2} x^{q^{2k}})^{2^j} for q = 2^m, n odd.
LinPoly pc_inverse_char2_odd(const FieldTower& F, Elem c);

/// Inverse of x^q - x from ker(T_alpha) onto ker(T); Errc::trace_zero when T(alpha) = 0.
LinPoly ker_trace_alpha_inverse(const FieldTower& F, Elem alpha);

}  // namespace ppinv

#endif
