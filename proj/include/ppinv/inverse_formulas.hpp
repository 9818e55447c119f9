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

#ifndef PPINV_INVERSE_FORMULAS_HPP
#define PPINV_INVERSE_FORMULAS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/linearized.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/poly.hpp"
#include "ppinv/subspace.hpp"

namespace ppinv {

/// f(x) = h(psi(x)) phi(x) + g(psi(x)) with phi o psi = psibar o phi.
struct AgwInstance {
    Poly g;
    Poly h;
    LinPoly phi;
    LinPoly psi;
    LinPoly psibar;
};

Poly agw_polynomial(const FieldTower& F, const AgwInstance& inst);

/// An independent check recorded by a constructor (formula vs formula, or formula vs oracle).
struct CrossCheck {
    std::string name;
    bool passed = false;
};

struct InverseCertificate {
    std::string family;
    /// Which closed form or branch produced the inverse.
    std::string formula;
    Poly f;
    Poly inverse;
    /// The assembled formula as an evaluation procedure.
    UnaryMap evaluate;
    bool verified = false;
    std::optional<Elem> counterexample;
    std::vector<CrossCheck> cross_checks;

    bool all_checks_passed() const noexcept;
};

/// Interpolates the procedure and checks both composition orders against f at every point.
InverseCertificate certify(const FieldTower& F, std::string family, std::string formula, Poly f, UnaryMap inverse);

/// Validates the instance invariants (Errc::hypothesis_violated) and decides conditions (i) and (ii).
bool check_agw_conditions(const FieldTower& F, const AgwInstance& inst);
InverseCertificate invert_agw_general(const FieldTower& F, const AgwInstance& inst);

enum class AdditivePreset { general, QT, TQ, NQ, constant_h };

/// Instance of a preset shape from phi (over F_q), h and G; general and constant_h take G as g directly
/// and use psi = psibar = T.
AgwInstance additive_preset(const FieldTower& F, AdditivePreset preset, const LinPoly& phi, const Poly& h,
                            const Poly& G);
InverseCertificate invert_additive_case(const FieldTower& F, const AgwInstance& inst, AdditivePreset preset);

/// c(a x^q + b x) + T(G(Q(x))) over F_{q^2}, certified with the displayed closed form as a cross-check.
InverseCertificate invert_quadratic_trace(const FieldTower& F, Elem a, Elem b, Elem c, const Poly& G);

/// f = phi(x) + gamma G(T(x)) with phi, G over F_q.
InverseCertificate invert_trace_translate(const FieldTower& F, const LinPoly& phi, Elem gamma, const Poly& G);

/// f = G(L1(x))^s + L2(x); k fixes the exponent condition s (q^k - 1) = 0 mod q^n - 1.
InverseCertificate invert_l1l2(const FieldTower& F, const LinPoly& L1, const LinPoly& L2, const Poly& G,
                               std::uint64_t s, unsigned k);
/// Parameters of x + (x^{q^k} - x + delta)^s for invert_l1l2.
struct L1L2Params {
    LinPoly L1;
    LinPoly L2;
    Poly G;
};
L1L2Params frobenius_difference_params(const FieldTower& F, unsigned k, Elem delta);

/// f = a x^q + b x + Q(x)^k over F_{q^2}.
InverseCertificate invert_q2_powerQ(const FieldTower& F, Elem a, Elem b, std::uint64_t k);

struct MultitermTerm {
    LinPoly L;
    Elem delta;
    Poly h;
};

/// f(x) = g(psi(x)) + sum_i (L_i(x) + delta_i) h_i(psi(x)).
struct MultitermInstance {
    LinPoly psi;
    std::vector<MultitermTerm> terms;
    Poly g;
};

Poly multiterm_polynomial(const FieldTower& F, const MultitermInstance& inst);
/// H(x) + x g(T(x)) as a two-term instance.
MultitermInstance linear_trace_instance(const FieldTower& F, const LinPoly& H, const Poly& g);

enum class PreimageBranch { full, subspace, trace, oracle };
std::string_view branch_name(PreimageBranch b) noexcept;

struct Preimage {
    Elem value;
    PreimageBranch branch = PreimageBranch::oracle;
    /// False when the branch formula disagrees with the oracle table; value then holds the formula output.
    bool agrees = true;
};

/// Per-point preimages for one parameter set; hypotheses and tables are computed once.
class MultitermInverse {
   public:
    /// Errc::not_permutation if f does not permute; Errc::hypothesis_violated for malformed parameters.
    MultitermInverse(const FieldTower& F, MultitermInstance inst);

    Preimage preimage(Elem x) const;
    const Poly& f() const noexcept { return f_; }
    /// Certificate over every point; counterexample marks the first disagreement.
    InverseCertificate certificate() const;

   private:
    struct PerY {
        LinPoly phi;
        Elem shift;
        std::optional<LinPoly> full_inverse;
        std::optional<LinPoly> subspace_inverse;
        std::optional<LinPoly> trace_inverse;
    };
    const PerY& per_y(Elem y) const;

    FieldTower F_;
    MultitermInstance inst_;
    Poly f_;
    std::vector<Elem> oracle_;
    RestrictedInverse fbar_inv_;
    SubspaceBasis S_psi_;
    SubspaceBasis psi_S_;
    SubspaceBasis im_psi_;
    bool psi_is_trace_ = false;
    std::vector<std::pair<Elem, PerY>> per_y_;
};

Elem preimage_multiterm(const FieldTower& F, const MultitermInstance& inst, Elem x);

/// f = a x^p + x g(T(x)); the step function keyed on g(fbar^{-1}(T(x))) / a.
InverseCertificate invert_bilinear_general(const FieldTower& F, Elem a, const Poly& g);

struct ShiftedFrobenius {
    /// True iff T(alpha) != 0 and p does not divide n.
    bool permutation = false;
    /// Exhaustive permutation test of the same polynomial.
    bool oracle_permutation = false;
    Poly f;
    std::vector<Elem> b;
    std::optional<InverseCertificate> certificate;
};

/// c(x^q - x + T(alpha x)) + G(T(alpha x))^q - G(T(alpha x)).
ShiftedFrobenius invert_shifted_frobenius(const FieldTower& F, Elem alpha, Elem c, const Poly& G);
/// b_k from the sum display.
std::vector<Elem> shifted_frobenius_b(const FieldTower& F, Elem alpha);
/// b_k from the case split over q = 2, n odd, written in a = alpha^{-1}.
std::vector<Elem> b_case_split(const FieldTower& F, Elem a);

}  // namespace ppinv

#endif
