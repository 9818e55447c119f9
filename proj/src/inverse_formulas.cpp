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

#include "ppinv/inverse_formulas.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <memory>
#include <numeric>
#include <unordered_set>

namespace ppinv {

namespace {

[[noreturn]] void violated(const std::string& what, std::optional<Elem> witness = std::nullopt) {
    throw Error(Errc::hypothesis_violated, what,
                witness ? std::optional<std::uint32_t>(witness->code) : std::nullopt);
}

Elem sign(const FieldTower& F, std::uint64_t e) { return e % 2 == 0 ? F.one() : F.neg(F.one()); }

bool poly_in_base(const FieldTower& F, const Poly& f) {
    return std::all_of(f.coeffs.begin(), f.coeffs.end(), [&](Elem c) { return F.in_base(c); });
}

std::vector<Elem> base_field(const FieldTower& F) {
    std::vector<Elem> out(F.q());
    for (Code c = 0; c < F.q(); ++c) out[c] = Elem{c};
    return out;
}

LinPoly prime(const FieldTower& F, const LinPoly& L) { return to_level(F, L, Level::prime); }
SubspaceBasis prime(const FieldTower& F, const SubspaceBasis& V) { return to_level(F, V, Level::prime); }

bool meets_trivially(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b) {
    return intersect(F, prime(F, a), prime(F, b)).dim() == 0;
}

std::optional<Elem> first_common(const FieldTower& F, const SubspaceBasis& a, const SubspaceBasis& b) {
    auto v = intersect(F, prime(F, a), prime(F, b)).basis_elements(F);
    if (v.empty()) return std::nullopt;
    return v.front();
}

bool same_map(const FieldTower& F, const LinPoly& a, const LinPoly& b) { return prime(F, a) == prime(F, b); }

/// Oracle inverse table; Errc::hypothesis_violated with a colliding point if f does not permute.
std::vector<Elem> require_permutation(const FieldTower& F, const Poly& f) {
    try {
        return inverse_table(F, evaluate_all(F, f));
    } catch (const Error& e) {
        if (e.code() != Errc::not_permutation) throw;
        violated("f does not permute the field",
                 e.witness() ? std::optional<Elem>(Elem{*e.witness()}) : std::nullopt);
    }
}

/// Inverse of a map between two finite sets; hypothesis_violated with witness on failure.
RestrictedInverse require_bijection(const FieldTower& F, const UnaryMap& f, std::span<const Elem> domain,
                                    std::span<const Elem> codomain, const std::string& what) {
    try {
        return restricted_inverse_table(F, f, domain, codomain);
    } catch (const Error& e) {
        if (e.code() != Errc::not_bijective_on_domain) throw;
        violated(what, e.witness() ? std::optional<Elem>(Elem{*e.witness()}) : std::nullopt);
    }
}

bool maps_equal(const FieldTower& F, const UnaryMap& a, const UnaryMap& b) {
    return evaluate_all(F, a) == evaluate_all(F, b);
}

void validate_agw(const FieldTower& F, const AgwInstance& inst) {
    F.require_desk_scale("AGW instance");
    if (!same_map(F, lin_compose(F, inst.phi, inst.psi), lin_compose(F, inst.psibar, inst.phi)))
        violated("phi o psi differs from psibar o phi");
    SubspaceBasis im_psi = image(F, inst.psi);
    if (im_psi.cardinality() != image(F, inst.psibar).cardinality())
        violated("psi and psibar have images of different sizes");
    for (Elem y : im_psi.elements(F)) {
        Elem hy = eval(F, inst.h, y);
        if (hy.code == 0 || !F.in_base(hy)) violated("h must map psi(F) into F_q minus 0", y);
    }
}

UnaryMap agw_fbar(const FieldTower& F, const AgwInstance& inst) {
    return [&F, inst](Elem x) {
        return F.add(F.mul(eval(F, inst.h, x), lin_eval(F, inst.phi, x)),
                     lin_eval(F, inst.psibar, eval(F, inst.g, x)));
    };
}

}  // namespace

bool InverseCertificate::all_checks_passed() const noexcept {
    return verified && std::all_of(cross_checks.begin(), cross_checks.end(), [](const CrossCheck& c) { return c.passed; });
}

InverseCertificate certify(const FieldTower& F, std::string family, std::string formula, Poly f, UnaryMap inverse) {
    F.require_desk_scale("certification");
    InverseCertificate cert;
    cert.family = std::move(family);
    cert.formula = std::move(formula);
    cert.f = reduce(F, f);
    cert.evaluate = std::move(inverse);
    auto table = evaluate_all(F, cert.evaluate);
    cert.inverse = interpolate_values(F, table);
    auto inv = evaluate_all(F, cert.inverse);
    auto fv = evaluate_all(F, cert.f);
    const std::uint64_t Q = F.size();
    for (std::uint64_t x = 0; x < Q && !cert.counterexample; ++x)
        if (inv[fv[x].code].code != x) cert.counterexample = Elem{static_cast<Code>(x)};
    for (std::uint64_t x = 0; x < Q && !cert.counterexample; ++x)
        if (fv[inv[x].code].code != x) cert.counterexample = Elem{static_cast<Code>(x)};
    cert.verified = !cert.counterexample && inv == table;
    bool oracle = false;
    try {
        oracle = interpolate_values(F, inverse_table(F, fv)) == cert.inverse;
    } catch (const Error&) {
        oracle = false;
    }
    cert.cross_checks.push_back({"brute_inverse", oracle});
    return cert;
}

Poly agw_polynomial(const FieldTower& F, const AgwInstance& inst) {
    return interpolate_map(F, [&](Elem x) {
        Elem y = lin_eval(F, inst.psi, x);
        return F.add(F.mul(eval(F, inst.h, y), lin_eval(F, inst.phi, x)), eval(F, inst.g, y));
    });
}

bool check_agw_conditions(const FieldTower& F, const AgwInstance& inst) {
    validate_agw(F, inst);
    bool cond_i = meets_trivially(F, kernel(F, inst.phi), kernel(F, inst.psi));
    bool cond_ii = true;
    try {
        restricted_inverse_table(F, agw_fbar(F, inst), image(F, inst.psi).elements(F),
                                 image(F, inst.psibar).elements(F));
    } catch (const Error& e) {
        if (e.code() != Errc::not_bijective_on_domain) throw;
        cond_ii = false;
    }
    bool verdict = cond_i && cond_ii;
    if (verdict != is_permutation(F, agw_polynomial(F, inst)))
        throw Error(Errc::internal, "AGW conditions disagree with the exhaustive permutation test");
    return verdict;
}

InverseCertificate invert_agw_general(const FieldTower& F, const AgwInstance& inst) {
    Poly f = agw_polynomial(F, inst);
    if (!check_agw_conditions(F, inst)) require_permutation(F, f);
    SubspaceBasis S = s_psi(F, inst.psi), Sbar = s_psi(F, inst.psibar);
    if (S.cardinality() != Sbar.cardinality()) violated("S_psi and S_psibar differ in size");
    if (auto w = first_common(F, kernel(F, inst.phi), image_of(F, inst.psi, S)))
        violated("ker(phi) meets psi(S_psi) nontrivially", w);

    auto fbar_inv = std::make_shared<RestrictedInverse>(require_bijection(
        F, agw_fbar(F, inst), image(F, inst.psi).elements(F), image(F, inst.psibar).elements(F),
        "fbar does not biject psi(F) onto psibar(F)"));
    LinPoly R = subspace_inverse(F, inst.phi, S, Sbar);
    auto cert = certify(F, "agw", "two_subspace", f, [&F, inst, fbar_inv, R](Elem x) {
        Elem px = lin_eval(F, inst.psibar, x);
        Elem y = fbar_inv->lookup(px);
        Elem u = eval(F, inst.g, y);
        Elem z = F.add(F.sub(F.sub(x, px), u), lin_eval(F, inst.psibar, u));
        z = F.mul(z, F.safe_inv(eval(F, inst.h, y)));
        return F.add(y, lin_eval(F, R, z));
    });
    if (!bijection_witness(F, inst.phi, image(F, inst.psi), image(F, inst.psibar))) {
        LinPoly phi_inv = lin_inverse_full(F, inst.phi);
        UnaryMap second = [&F, inst, fbar_inv, phi_inv](Elem x) {
            Elem y = fbar_inv->lookup(lin_eval(F, inst.psibar, x));
            Elem z = F.mul(F.sub(x, eval(F, inst.g, y)), F.safe_inv(eval(F, inst.h, y)));
            return lin_eval(F, phi_inv, z);
        };
        cert.cross_checks.push_back({"second_form", maps_equal(F, cert.evaluate, second)});
    }
    return cert;
}

AgwInstance additive_preset(const FieldTower& F, AdditivePreset preset, const LinPoly& phi, const Poly& h,
                            const Poly& G) {
    LinPoly T = lin_trace(F), Q = lin_frobenius_minus_id(F);
    switch (preset) {
        case AdditivePreset::QT:
            return {compose_mod(F, lin_to_poly(F, Q), G), h, phi, T, T};
        case AdditivePreset::TQ:
            return {compose_mod(F, lin_to_poly(F, T), G), h, phi, Q, Q};
        case AdditivePreset::NQ: {
            Poly N = Poly::monomial(F.one(), (F.size() - 1) / (F.q() - 1));
            return {compose_mod(F, N, G), h, phi, Q, Q};
        }
        case AdditivePreset::general:
        case AdditivePreset::constant_h:
            break;
    }
    return {G, h, phi, T, T};
}

InverseCertificate invert_additive_case(const FieldTower& F, const AgwInstance& inst, AdditivePreset preset) {
    validate_agw(F, inst);
    if (preset == AdditivePreset::QT || preset == AdditivePreset::TQ || preset == AdditivePreset::NQ) {
        if (!coefficients_in(F, inst.phi, Level::base)) violated("phi must have coefficients in F_q");
        LinPoly want = preset == AdditivePreset::QT ? lin_trace(F) : lin_frobenius_minus_id(F);
        if (!same_map(F, inst.psi, want) || !same_map(F, inst.psibar, want))
            violated("psi and psibar do not match the preset");
    }
    auto im_psi = image(F, inst.psi).elements(F);
    for (Elem y : im_psi)
        if (lin_eval(F, inst.psibar, eval(F, inst.g, y)).code != 0) violated("psibar o g does not vanish on psi(F)", y);
    std::unordered_set<Code> h_values;
    for (Elem y : im_psi) h_values.insert(eval(F, inst.h, y).code);
    const bool constant_h = h_values.size() == 1;
    if (preset == AdditivePreset::constant_h && !constant_h) violated("h is not constant on psi(F)");

    Poly f = agw_polynomial(F, inst);
    require_permutation(F, f);
    LinPoly phi_inv = lin_inverse_full(F, inst.phi);
    UnaryMap fbar = [&F, inst](Elem x) { return F.mul(eval(F, inst.h, x), lin_eval(F, inst.phi, x)); };
    auto fbar_inv = std::make_shared<RestrictedInverse>(require_bijection(
        F, fbar, im_psi, image(F, inst.psibar).elements(F), "fbar does not biject psi(F) onto psibar(F)"));

    UnaryMap general = [&F, inst, fbar_inv, phi_inv](Elem x) {
        Elem px = lin_eval(F, inst.psibar, x);
        Elem hinv = F.safe_inv(eval(F, inst.h, fbar_inv->lookup(px)));
        Elem inner = F.mul(lin_eval(F, phi_inv, px), hinv);
        return F.mul(lin_eval(F, phi_inv, F.sub(x, eval(F, inst.g, inner))), hinv);
    };
    UnaryMap scalar;
    if (constant_h) {
        Elem cinv = F.inv(Elem{*h_values.begin()});
        scalar = [&F, inst, phi_inv, cinv](Elem x) {
            Elem inner = F.mul(cinv, lin_eval(F, phi_inv, lin_eval(F, inst.psibar, x)));
            return F.mul(cinv, lin_eval(F, phi_inv, F.sub(x, eval(F, inst.g, inner))));
        };
    }
    bool use_scalar = preset == AdditivePreset::constant_h;
    auto cert = certify(F, "additive", use_scalar ? "constant_h" : "additive", f, use_scalar ? scalar : general);
    if (constant_h && !use_scalar) cert.cross_checks.push_back({"constant_h_form", maps_equal(F, general, scalar)});
    if (use_scalar) cert.cross_checks.push_back({"additive_form", maps_equal(F, general, scalar)});
    try {
        auto agw = invert_agw_general(F, inst);
        cert.cross_checks.push_back({"agw_form", agw.inverse == cert.inverse});
    } catch (const Error& e) {
        if (e.code() != Errc::hypothesis_violated) throw;
    }
    return cert;
}

InverseCertificate invert_quadratic_trace(const FieldTower& F, Elem a, Elem b, Elem c, const Poly& G) {
    if (F.n() != 2) violated("needs n = 2");
    if (!F.in_base(a) || !F.in_base(b) || !F.in_base(c) || c.code == 0) violated("a, b, c must lie in F_q, c != 0");
    if (a == b || a == F.neg(b)) violated("needs a != +-b");
    LinPoly phi = lin_from_coeffs(F, Level::base, {b, a});
    auto inst = additive_preset(F, AdditivePreset::TQ, phi, Poly::constant(c), G);
    auto cert = invert_additive_case(F, inst, AdditivePreset::TQ);
    cert.family = "quadratic-trace";
    Elem d1 = F.inv(F.mul(c, F.sub(F.mul(a, a), F.mul(b, b))));
    Elem d2 = F.inv(F.mul(c, F.sub(b, a)));
    Elem d3 = F.inv(F.mul(c, F.add(a, b)));
    UnaryMap display = [&F, a, b, G, d1, d2, d3](Elem x) {
        Elem xq = F.frobenius(x, 1);
        Elem lead = F.mul(F.sub(F.mul(a, xq), F.mul(b, x)), d1);
        Elem tail = F.trace(eval(F, G, F.mul(F.sub(xq, x), d2)));
        return F.sub(lead, F.mul(tail, d3));
    };
    cert.cross_checks.push_back({"closed_form", maps_equal(F, cert.evaluate, display)});
    return cert;
}

InverseCertificate invert_trace_translate(const FieldTower& F, const LinPoly& phi, Elem gamma, const Poly& G) {
    F.require_desk_scale("trace translate");
    if (phi.level != Level::base || !coefficients_in(F, phi, Level::base))
        violated("phi must be a q-polynomial over F_q");
    if (!poly_in_base(F, G)) violated("G must have coefficients in F_q");
    if (lin_determinant(F, phi).code == 0) violated("phi does not permute the field");
    const LinPoly T = lin_trace(F);
    UnaryMap fmap = [&F, phi, gamma, G](Elem x) {
        return F.add(lin_eval(F, phi, x), F.mul(gamma, eval(F, G, F.trace(x))));
    };
    Poly f = interpolate_map(F, fmap);
    require_permutation(F, f);
    const Elem c = F.trace(gamma), phi1 = lin_eval(F, phi, F.one());
    auto fq = base_field(F);
    auto fbar_inv = std::make_shared<RestrictedInverse>(require_bijection(
        F, [&F, G, c, phi1](Elem x) { return F.add(F.mul(c, eval(F, G, x)), F.mul(phi1, x)); }, fq, fq,
        "fbar does not permute F_q"));
    LinPoly phi_inv = lin_inverse_full(F, phi);
    auto cert = certify(F, "trace-translate", "lookup", f, [&F, phi_inv, gamma, G, fbar_inv](Elem x) {
        Elem y = fbar_inv->lookup(F.trace(x));
        return lin_eval(F, phi_inv, F.sub(x, F.mul(gamma, eval(F, G, y))));
    });
    if (G == Poly::x()) {
        Elem denom = F.add(c, phi1);
        cert.cross_checks.push_back({"denominator_nonzero", denom.code != 0});
        Elem dinv = F.safe_inv(denom);
        UnaryMap linear = [&F, phi_inv, gamma, dinv](Elem x) {
            return lin_eval(F, phi_inv, F.sub(x, F.mul(F.mul(gamma, F.trace(x)), dinv)));
        };
        cert.formula = "linear_G";
        cert.cross_checks.push_back({"linear_G_form", maps_equal(F, cert.evaluate, linear)});
        Elem a = phi.coeffs.size() > 1 ? phi.coeffs[1] : F.zero(), b = phi.coeffs[0];
        Elem abc = F.add(F.add(a, b), c);
        if (F.n() == 2 && a != b && a != F.neg(b) && abc.code != 0) {
            Elem d = F.inv(F.sub(F.mul(a, a), F.mul(b, b)));
            Elem coef = F.mul(F.sub(F.mul(a, F.frobenius(gamma, 1)), F.mul(b, gamma)), F.mul(d, F.inv(abc)));
            UnaryMap two_term = [&F, a, b, d, coef](Elem x) {
                Elem lead = F.mul(F.sub(F.mul(a, F.frobenius(x, 1)), F.mul(b, x)), d);
                return F.sub(lead, F.mul(coef, F.trace(x)));
            };
            cert.cross_checks.push_back({"quadratic_closed_form", maps_equal(F, cert.evaluate, two_term)});
        }
    }
    return cert;
}

L1L2Params frobenius_difference_params(const FieldTower& F, unsigned k, Elem delta) {
    LinPoly L1 = lin_zero(F);
    L1.coeffs[k % F.n()] = F.add(L1.coeffs[k % F.n()], F.one());
    L1.coeffs[0] = F.sub(L1.coeffs[0], F.one());
    return {L1, lin_identity(F), Poly{{delta, F.one()}}};
}

InverseCertificate invert_l1l2(const FieldTower& F, const LinPoly& L1, const LinPoly& L2, const Poly& G,
                               std::uint64_t s, unsigned k) {
    F.require_desk_scale("L1/L2 family");
    const unsigned n = F.n();
    if (k == 0) violated("k must be positive");
    const unsigned d = std::gcd(n, k);
    if (d <= 1) violated("needs gcd(n, k) > 1");
    const std::uint64_t M = F.size() - 1;
    const std::uint64_t qk = checked_pow(F.q(), k % n == 0 ? n : k);
    // q^k = q^{k mod n} modulo q^n - 1
    if (s == 0 || static_cast<unsigned __int128>(s % M) * ((qk - 1) % M) % M != 0)
        throw Error(Errc::bad_exponent, "s (q^k - 1) is not divisible by q^n - 1");
    if (L1.level != Level::base || !coefficients_in(F, L1, Level::base)) violated("L1 must be over F_q");
    for (unsigned i = 0; i < n; ++i)
        if (i % d != 0 && L1.coeffs[i].code != 0) violated("L1 must be a q^d-polynomial");
    if (lin_eval(F, L1, F.one()).code != 0) violated("needs L1(1) = 0");
    if (L2.level != Level::base || !coefficients_in(F, L2, Level::base)) violated("L2 must be over F_q");
    Poly f = interpolate_map(F, [&](Elem x) {
        return F.add(F.pow(eval(F, G, lin_eval(F, L1, x)), s), lin_eval(F, L2, x));
    });
    require_permutation(F, f);
    LinPoly L2inv = lin_inverse_full(F, L2);
    auto cert = certify(F, "l1l2", "l1l2", f, [&F, L1, L2inv, G, s](Elem x) {
        Elem inner = F.pow(eval(F, G, lin_eval(F, L2inv, lin_eval(F, L1, x))), s);
        return lin_eval(F, L2inv, F.sub(x, inner));
    });
    auto shape = frobenius_difference_params(F, k, G.coeff(0));
    if (L2 == lin_identity(F) && L1 == shape.L1 && G == shape.G) {
        cert.formula = "frobenius_difference";
        UnaryMap closed = [&F, L1, G, s](Elem x) { return F.sub(x, F.pow(eval(F, G, lin_eval(F, L1, x)), s)); };
        cert.cross_checks.push_back({"closed_form", maps_equal(F, cert.evaluate, closed)});
    }
    return cert;
}

InverseCertificate invert_q2_powerQ(const FieldTower& F, Elem a, Elem b, std::uint64_t k) {
    if (F.n() != 2) violated("needs n = 2");
    if (!F.in_base(a) || !F.in_base(b)) violated("a and b must lie in F_q");
    if (a == b || a == F.neg(b)) violated("needs a != +-b");
    if (k < 2 || k % 2 != 0) violated("k must be even and at least 2");
    F.require_desk_scale("power of Q family");
    LinPoly L = lin_from_coeffs(F, Level::base, {b, a});
    Poly f = interpolate_map(F, [&](Elem x) { return F.add(lin_eval(F, L, x), F.pow(F.sub(F.frobenius(x, 1), x), k)); });
    require_permutation(F, f);
    Elem d = F.inv(F.sub(F.mul(a, a), F.mul(b, b)));
    Elem apb = F.inv(F.add(a, b)), amb = F.inv(F.sub(a, b));
    auto cert = certify(F, "power-q", "closed_form", f, [&F, a, b, k, d, apb, amb](Elem x) {
        Elem xq = F.frobenius(x, 1);
        Elem lead = F.mul(F.sub(F.mul(a, xq), F.mul(b, x)), d);
        return F.sub(lead, F.mul(apb, F.pow(F.mul(F.sub(xq, x), amb), k)));
    });
    LinPoly Linv = lin_inverse_full(F, L);
    UnaryMap two_stage = [&F, Linv, k](Elem x) {
        Elem inner = F.pow(lin_eval(F, Linv, F.sub(F.frobenius(x, 1), x)), k);
        return lin_eval(F, Linv, F.sub(x, inner));
    };
    cert.cross_checks.push_back({"two_stage", maps_equal(F, cert.evaluate, two_stage)});
    return cert;
}

Poly multiterm_polynomial(const FieldTower& F, const MultitermInstance& inst) {
    return interpolate_map(F, [&](Elem x) {
        Elem y = lin_eval(F, inst.psi, x);
        Elem acc = eval(F, inst.g, y);
        for (const auto& t : inst.terms)
            acc = F.add(acc, F.mul(F.add(lin_eval(F, t.L, x), t.delta), eval(F, t.h, y)));
        return acc;
    });
}

MultitermInstance linear_trace_instance(const FieldTower& F, const LinPoly& H, const Poly& g) {
    return {lin_trace(F), {{H, F.zero(), Poly::constant(F.one())}, {lin_identity(F), F.zero(), g}}, Poly{}};
}

std::string_view branch_name(PreimageBranch b) noexcept {
    switch (b) {
        case PreimageBranch::full: return "full";
        case PreimageBranch::subspace: return "subspace";
        case PreimageBranch::trace: return "trace";
        case PreimageBranch::oracle: return "oracle";
    }
    return "oracle";
}

MultitermInverse::MultitermInverse(const FieldTower& F, MultitermInstance inst) : F_(F), inst_(std::move(inst)) {
    F_.require_desk_scale("multiterm family");
    const LinPoly& psi = inst_.psi;
    if (psi.level != Level::base || !coefficients_in(F_, psi, Level::base))
        violated("psi must be a q-polynomial over F_q");
    if (inst_.terms.empty()) violated("needs at least one term");
    im_psi_ = image(F_, psi);
    auto im = im_psi_.elements(F_);
    for (const auto& t : inst_.terms) {
        if (!coefficients_in(F_, t.L, Level::base)) violated("each L_i must have coefficients in F_q");
        if (!same_map(F_, lin_compose(F_, t.L, psi), lin_compose(F_, psi, t.L)))
            violated("each L_i must commute with psi");
        if (!poly_in_base(F_, t.h)) violated("each h_i must have coefficients in F_q");
        if (!F_.in_base(lin_eval(F_, psi, t.delta))) violated("psi(delta_i) must lie in F_q", t.delta);
        for (Elem y : im)
            if (!F_.in_base(eval(F_, t.h, y))) violated("h_i must map psi(F) into F_q", y);
    }
    f_ = multiterm_polynomial(F_, inst_);
    oracle_ = inverse_table(F_, evaluate_all(F_, f_));

    const MultitermInstance& I = inst_;
    const FieldTower& G = F_;
    fbar_inv_ = restricted_inverse_table(
        F_,
        [&G, &I](Elem x) {
            Elem acc = lin_eval(G, I.psi, eval(G, I.g, x));
            for (const auto& t : I.terms)
                acc = G.add(acc, G.mul(G.add(lin_eval(G, t.L, x), lin_eval(G, I.psi, t.delta)), eval(G, t.h, x)));
            return acc;
        },
        im, im);
    S_psi_ = s_psi(F_, psi);
    psi_S_ = image_of(F_, psi, S_psi_);
    psi_is_trace_ = psi == lin_trace(F_) && F_.n() % F_.p() != 0;
    const SubspaceBasis kerT = kernel(F_, lin_trace(F_));

    for (Elem y : im) {
        PerY P;
        P.phi = lin_zero(F_, Level::base);
        P.shift = eval(F_, inst_.g, y);
        for (const auto& t : inst_.terms) {
            Elem hy = eval(F_, t.h, y);
            if (t.L.level != P.phi.level) P.phi = prime(F_, P.phi);
            P.phi = lin_add(F_, P.phi, lin_scale(F_, to_level(F_, t.L, P.phi.level), hy));
            P.shift = F_.add(P.shift, F_.mul(t.delta, hy));
        }
        SubspaceBasis ker = kernel(F_, P.phi);
        if (meets_trivially(F_, ker, im_psi_)) P.full_inverse = lin_inverse_full(F_, P.phi);
        auto attempt = [&](const SubspaceBasis& V) -> std::optional<LinPoly> {
            try {
                return subspace_inverse(F_, P.phi, V, V);
            } catch (const Error& e) {
                if (e.code() != Errc::not_bijective_on_subspace && e.code() != Errc::no_solution) throw;
                return std::nullopt;
            }
        };
        if (!P.full_inverse && meets_trivially(F_, ker, psi_S_)) P.subspace_inverse = attempt(S_psi_);
        if (!P.full_inverse && !P.subspace_inverse && psi_is_trace_) P.trace_inverse = attempt(kerT);
        per_y_.emplace_back(y, std::move(P));
    }
}

const MultitermInverse::PerY& MultitermInverse::per_y(Elem y) const {
    auto it = std::lower_bound(per_y_.begin(), per_y_.end(), y,
                               [](const auto& e, Elem v) { return e.first < v; });
    if (it == per_y_.end() || it->first != y) throw Error(Errc::internal, "no data for y", y.code);
    return it->second;
}

Preimage MultitermInverse::preimage(Elem x) const {
    const FieldTower& F = F_;
    Elem px = lin_eval(F, inst_.psi, x);
    Elem y = fbar_inv_.lookup(px);
    const PerY& P = per_y(y);
    Preimage out;
    if (P.full_inverse) {
        out.branch = PreimageBranch::full;
        out.value = lin_eval(F, *P.full_inverse, F.sub(x, P.shift));
    } else if (P.subspace_inverse) {
        out.branch = PreimageBranch::subspace;
        Elem z = F.add(F.sub(F.sub(x, px), P.shift), lin_eval(F, inst_.psi, P.shift));
        out.value = F.add(y, lin_eval(F, *P.subspace_inverse, z));
    } else if (P.trace_inverse) {
        out.branch = PreimageBranch::trace;
        Elem ninv = F.inv(F.from_int(F.n()));
        Elem z = F.sub(F.sub(x, F.mul(ninv, F.trace(x))), P.shift);
        z = F.add(z, F.mul(ninv, F.trace(P.shift)));
        out.value = F.add(F.mul(ninv, y), lin_eval(F, *P.trace_inverse, z));
    } else {
        out.branch = PreimageBranch::oracle;
        out.value = oracle_[x.code];
    }
    out.agrees = out.value == oracle_[x.code];
    return out;
}

InverseCertificate MultitermInverse::certificate() const {
    std::array<std::atomic<std::uint64_t>, 4> counts{};
    auto cert = certify(F_, "multiterm", "per_point", f_, [this, &counts](Elem x) {
        auto r = preimage(x);
        counts[static_cast<std::size_t>(r.branch)].fetch_add(1, std::memory_order_relaxed);
        return r.value;
    });
    cert.evaluate = [this](Elem x) { return preimage(x).value; };
    std::string formula;
    for (auto b : {PreimageBranch::full, PreimageBranch::subspace, PreimageBranch::trace, PreimageBranch::oracle}) {
        if (!formula.empty()) formula += ',';
        formula += std::string(branch_name(b)) + ':' + std::to_string(counts[static_cast<std::size_t>(b)].load());
    }
    cert.formula = formula;
    cert.cross_checks.push_back({"no_oracle_fallback", counts[static_cast<std::size_t>(PreimageBranch::oracle)] == 0});
    return cert;
}

Elem preimage_multiterm(const FieldTower& F, const MultitermInstance& inst, Elem x) {
    MultitermInverse inv(F, inst);
    auto r = inv.preimage(x);
    if (r.branch == PreimageBranch::oracle)
        throw Error(Errc::no_branch_applies, "no branch formula applies at this point", x.code);
    return r.value;
}

InverseCertificate invert_bilinear_general(const FieldTower& F, Elem a, const Poly& g) {
    F.require_desk_scale("bilinear family");
    if (a.code == 0 || !F.in_base(a)) violated("a must lie in F_q minus 0");
    if (!poly_in_base(F, g)) violated("g must have coefficients in F_q");
    const std::uint64_t p = F.p(), m = F.m(), n = F.n(), q = F.q(), mn = m * n;
    auto fq = base_field(F);
    auto fbar_inv = std::make_shared<RestrictedInverse>(require_bijection(
        F, [&F, a, g, p](Elem x) { return F.add(F.mul(a, F.pow(x, p)), F.mul(x, eval(F, g, x))); }, fq, fq,
        "fbar does not permute F_q"));
    std::vector<Elem> kerT;
    for (Elem x : F.elements())
        if (F.trace(x).code == 0) kerT.push_back(x);
    for (Elem y : fq) {
        Elem gy = eval(F, g, y);
        try {
            restricted_inverse_table(
                F, [&F, a, gy, p](Elem x) { return F.add(F.mul(a, F.pow(x, p)), F.mul(x, gy)); }, kerT, kerT);
        } catch (const Error& e) {
            if (e.code() != Errc::not_bijective_on_domain) throw;
            violated("phi_y does not permute ker(T)", y);
        }
    }
    Poly f = interpolate_map(F, [&](Elem x) { return F.add(F.mul(a, F.pow(x, p)), F.mul(x, eval(F, g, F.trace(x)))); });

    const Elem ainv = F.inv(a), sign_m = sign(F, m), one = F.one();
    const Elem n_pm2 = F.pow(F.from_int(static_cast<std::int64_t>(n)), p - 2);
    const std::uint64_t top = (q - 1) / (p - 1), ntop = n * top, e1 = F.size() / p;
    const Elem neg_a_ntop = F.pow(F.neg(a), ntop);
    auto bad_indicator = std::make_shared<std::atomic<bool>>(false);

    auto step = [&F, a, g, p, m, n, q, mn, fbar_inv, ainv, sign_m, one, n_pm2, top, ntop, e1, neg_a_ntop,
                 bad_indicator](Elem x) {
        Elem tx = F.trace(x);
        Elem y = fbar_inv->lookup(tx);
        Elem G = eval(F, g, y);
        Elem c = F.mul(G, ainv);
        Elem Gq = F.pow(G, q - 1);
        Elem E = F.pow(F.sub(F.pow(c, top), sign_m), p - 1);
        Elem I1 = F.sub(one, Gq), I2 = F.mul(Gq, E), I3 = F.sub(one, E);
        int fired = 0;
        for (Elem I : {I1, I2, I3}) {
            if (I.code > 1) bad_indicator->store(true);
            fired += I.code == 1;
        }
        if (fired != 1) bad_indicator->store(true);

        Elem t1 = F.pow(F.mul(x, ainv), e1);

        Elem denom_inv = F.safe_inv(F.sub(F.pow(G, ntop), neg_a_ntop));
        Elem t2{0};
        for (std::uint64_t i = 0; i < mn; ++i) {
            std::uint64_t Ei = (checked_pow(p, mn) - checked_pow(p, i + 1)) / (p - 1);
            Elem term = F.mul(sign(F, i), F.pow(a, (checked_pow(p, i) - 1) / (p - 1)));
            term = F.mul(term, F.pow(G, Ei));
            t2 = F.add(t2, F.mul(term, F.frobenius_p(x, i)));
        }
        t2 = F.mul(t2, denom_inv);

        Elem W{0};
        Elem shift = F.mul(n_pm2, tx);
        for (std::uint64_t k = 1; k < n; ++k)
            W = F.add(W, F.mul(F.from_int(static_cast<std::int64_t>(k)), F.sub(F.frobenius(x, k), shift)));
        Elem inner{0};
        for (std::uint64_t j = 0; j < m; ++j) {
            Elem coef = F.mul(sign(F, j), F.pow(a, (checked_pow(p, j) - 1) / (p - 1)));
            coef = F.mul(coef, F.safe_inv(F.pow(G, (checked_pow(p, j + 1) - 1) / (p - 1))));
            inner = F.add(inner, F.mul(coef, F.frobenius_p(W, j)));
        }
        Elem t3 = F.mul(n_pm2, F.sub(y, inner));
        return F.add(F.add(F.mul(I1, t1), F.mul(I2, t2)), F.mul(I3, t3));
    };
    auto cert = certify(F, "bilinear", "step_function", f, step);
    cert.cross_checks.push_back({"one_indicator_per_point", !bad_indicator->load()});

    // The same inverse through the kernel-of-trace inverses of x^p + c x.
    std::vector<std::optional<PcKernelInverse>> pc(q);
    for (Elem y : fq) {
        Elem c = F.mul(eval(F, g, y), ainv);
        if (c.code != 0) pc[y.code] = pc_kernel_inverse(F, c);
    }
    bool pc_ok = true;
    const Elem ninv = n % p == 0 ? F.zero() : F.inv(F.from_int(static_cast<std::int64_t>(n)));
    UnaryMap route = [&F, fbar_inv, &pc, &pc_ok, ainv, e1, ninv](Elem x) {
        Elem y = fbar_inv->lookup(F.trace(x));
        const auto& r = pc[y.code];
        if (!r) return F.pow(F.mul(x, ainv), e1);
        if (!r->inverse) {
            pc_ok = false;
            return Elem{0};
        }
        if (r->tag == PcCase::case2) return lin_eval(F, *r->inverse, F.mul(x, ainv));
        Elem z = F.mul(F.sub(x, F.mul(ninv, F.trace(x))), ainv);
        return F.add(F.mul(ninv, y), lin_eval(F, *r->inverse, z));
    };
    std::vector<Elem> rv(F.size());
    for (Code x = 0; x < F.size(); ++x) rv[x] = route(Elem{x});
    cert.cross_checks.push_back({"kernel_inverse_route", pc_ok && rv == evaluate_all(F, cert.evaluate)});
    return cert;
}

std::vector<Elem> shifted_frobenius_b(const FieldTower& F, Elem alpha) {
    const unsigned n = F.n();
    Elem weighted{0};
    for (unsigned j = 1; j < n; ++j) weighted = F.add(weighted, F.mul(F.from_int(j), F.frobenius(alpha, j)));
    std::vector<Elem> b(n);
    for (unsigned k = 0; k < n; ++k) {
        Elem tail{0};
        for (unsigned l = k + 1; l < n; ++l) tail = F.add(tail, F.frobenius(alpha, l));
        b[k] = F.sub(weighted, F.mul(F.from_int(n), tail));
    }
    return b;
}

std::vector<Elem> b_case_split(const FieldTower& F, Elem a) {
    if (F.q() != 2 || F.n() % 2 == 0) violated("needs q = 2 and n odd");
    const unsigned n = F.n();
    const Elem ainv = F.inv(a);
    // a^{-2^j} summed over j = from, from + 2, ..., up to the bound
    auto run = [&](unsigned from, unsigned to) {
        Elem s{0};
        for (unsigned j = from; j <= to && j < n; j += 2) s = F.add(s, F.frobenius(ainv, j));
        return s;
    };
    std::vector<Elem> b(n);
    b[0] = run(2, n - 1);
    for (unsigned k = 1; k < n; ++k)
        b[k] = k % 2 == 1 ? F.add(run(1, k), run(k + 1, n - 1)) : F.add(run(1, k - 1), run(k + 2, n - 1));
    return b;
}

ShiftedFrobenius invert_shifted_frobenius(const FieldTower& F, Elem alpha, Elem c, const Poly& G) {
    F.require_desk_scale("shifted Frobenius family");
    if (c.code == 0 || !F.in_base(c)) violated("c must lie in F_q minus 0");
    const unsigned n = F.n();
    const Elem ta = F.trace(alpha);
    ShiftedFrobenius out;
    out.permutation = ta.code != 0 && n % F.p() != 0;
    out.f = interpolate_map(F, [&](Elem x) {
        Elem t = F.trace(F.mul(alpha, x));
        Elem gt = eval(F, G, t);
        Elem lin = F.add(F.sub(F.frobenius(x, 1), x), t);
        return F.add(F.mul(c, lin), F.sub(F.frobenius(gt, 1), gt));
    });
    out.oracle_permutation = is_permutation(F, out.f);
    if (!out.permutation) return out;

    out.b = shifted_frobenius_b(F, alpha);
    LinPoly B = lin_from_coeffs(F, Level::base, out.b);
    const Elem ninv = F.inv(F.from_int(n)), cinv = F.inv(c), tinv = F.inv(ta);
    auto cert = certify(F, "shifted-frobenius", "closed_form", out.f, [&F, B, alpha, G, ninv, cinv, tinv](Elem x) {
        Elem tx = F.trace(x);
        Elem lead = F.mul(F.mul(tinv, ninv), F.add(tx, lin_eval(F, B, x)));
        Elem gv = eval(F, G, F.mul(F.mul(cinv, ninv), tx));
        Elem mid = F.mul(tinv, F.trace(F.mul(alpha, gv)));
        return F.mul(cinv, F.sub(F.add(lead, mid), gv));
    });
    if (F.q() == 2 && n % 2 == 1 && G == Poly::x() && c == F.one() && ta == F.one())
        cert.cross_checks.push_back({"case_split_coefficients", b_case_split(F, F.inv(alpha)) == out.b});
    out.certificate = std::move(cert);
    return out;
}

}  // namespace ppinv
