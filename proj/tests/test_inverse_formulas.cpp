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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ppinv/inverse_formulas.hpp"
#include "ppinv/literals.hpp"

using namespace ppinv;

namespace {

// Both composition orders against the polynomial oracle.
void require_inverse(const FieldTower& F, const InverseCertificate& cert) {
    CHECK(cert.verified);
    CHECK(!cert.counterexample);
    CHECK(functions_equal(F, compose_mod(F, cert.inverse, cert.f), Poly::x()));
    CHECK(functions_equal(F, compose_mod(F, cert.f, cert.inverse), Poly::x()));
    for (const auto& c : cert.cross_checks) {
        INFO(c.name);
        CHECK(c.passed);
    }
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::internal;
}

std::optional<std::uint32_t> witness_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.witness();
    }
    return std::nullopt;
}

Poly random_base_poly(const FieldTower& F, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<Code> pick(0, F.q() - 1);
    Poly g;
    for (int i = 0; i < terms; ++i) g.coeffs.push_back(Elem{pick(rng)});
    return trimmed(g);
}

LinPoly random_base_lin(const FieldTower& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<Code> pick(0, F.q() - 1);
    std::vector<Elem> c(F.n());
    for (auto& e : c) e = Elem{pick(rng)};
    return lin_from_coeffs(F, Level::base, c);
}

}  // namespace

TEST_CASE("AGW conditions") {
    auto F = FieldTower::build(2, 1, 3);
    auto zero = lin_zero(F);
    auto phi = parse_lin(F, "lin:[0,1,0]");
    REQUIRE(lin_determinant(F, phi).code != 0);
    AgwInstance trivial{Poly{}, Poly::constant(F.one()), phi, zero, zero};
    CHECK(check_agw_conditions(F, trivial));
    auto cert = invert_agw_general(F, trivial);
    require_inverse(F, cert);
    CHECK(cert.inverse == lin_to_poly(F, lin_inverse_full(F, phi)));

    auto s = parse_lin(F, "lin:[1,1,0]");
    AgwInstance shared_kernel{Poly{}, Poly::constant(F.one()), s, s, s};
    CHECK(!check_agw_conditions(F, shared_kernel));
    CHECK(code_of([&] { invert_agw_general(F, shared_kernel); }) == Errc::hypothesis_violated);

    auto gx = lin_monomial(F, Level::base, 0, Elem{2});
    AgwInstance noncommuting{Poly{}, Poly::constant(F.one()), lin_monomial(F, Level::base, 1, F.one()), gx, gx};
    CHECK(code_of([&] { check_agw_conditions(F, noncommuting); }) == Errc::hypothesis_violated);
}

TEST_CASE("AGW general inverse and its extra hypothesis") {
    // x^q - x + T(x) on F_8: S_T = ker(T) and x^q - x bijects it.
    auto F = FieldTower::build(2, 1, 3);
    auto T = lin_trace(F);
    AgwInstance inst{Poly::x(), Poly::constant(F.one()), lin_frobenius_minus_id(F), T, T};
    CHECK(check_agw_conditions(F, inst));
    require_inverse(F, invert_agw_general(F, inst));

    // phi = psi = T on F_4 fails condition (i).
    auto F4 = FieldTower::build(2, 1, 2);
    auto T4 = lin_trace(F4);
    AgwInstance bad{Poly{}, Poly::constant(F4.one()), T4, T4, T4};
    CHECK(code_of([&] { invert_agw_general(F4, bad); }) == Errc::hypothesis_violated);
    CHECK(witness_of([&] { invert_agw_general(F4, bad); }).has_value());

    // Random permutations phi with psi = psibar in F_q[x] and g, h over F_q.
    std::mt19937_64 rng(1);
    int done = 0;
    for (auto [p, m, n] : {std::tuple{3u, 1u, 2u}, {2u, 1u, 3u}, {2u, 2u, 2u}}) {
        auto G = FieldTower::build(p, m, n);
        for (int it = 0; it < 40; ++it) {
            auto phi = random_base_lin(G, rng);
            auto psi = random_base_lin(G, rng);
            if (lin_determinant(G, phi).code == 0) continue;
            AgwInstance a{random_base_poly(G, rng, 3), Poly::constant(Elem{1}), phi, psi, psi};
            if (!check_agw_conditions(G, a)) continue;
            require_inverse(G, invert_agw_general(G, a));
            ++done;
        }
    }
    CHECK(done > 10);
}

TEST_CASE("quadratic trace family and the additive presets") {
    for (unsigned p : {3u, 5u}) {
        auto F = FieldTower::build(p, 1, 2);
        std::mt19937_64 rng(p);
        for (Code a = 0; a < p; ++a)
            for (Code b = 0; b < p; ++b)
                for (Code c = 1; c < p; ++c) {
                    if (a == b || (a + b) % p == 0) continue;
                    std::uniform_int_distribution<Code> pick(0, static_cast<Code>(F.size() - 1));
                    Poly G{{Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)}}};
                    auto cert = invert_quadratic_trace(F, Elem{a}, Elem{b}, Elem{c}, G);
                    require_inverse(F, cert);
                }
    }
    auto F9 = FieldTower::build(3, 1, 2);
    auto cert = invert_quadratic_trace(F9, Elem{1}, Elem{0}, Elem{1}, Poly::x());
    require_inverse(F9, cert);
    CHECK(code_of([&] { invert_quadratic_trace(F9, Elem{1}, Elem{2}, Elem{1}, Poly::x()); }) == Errc::hypothesis_violated);

    // QT on F_8 with phi = x, h = 1, G = x collapses to f = x.
    auto F8 = FieldTower::build(2, 1, 3);
    auto qt = additive_preset(F8, AdditivePreset::QT, lin_identity(F8), Poly::constant(F8.one()), Poly::x());
    auto c1 = invert_additive_case(F8, qt, AdditivePreset::QT);
    require_inverse(F8, c1);
    CHECK(c1.f == Poly::x());
    CHECK(c1.inverse == Poly::x());

    // constant h, g = 0
    auto phi = parse_lin(F8, "lin:[0,1,0]");
    auto ch = additive_preset(F8, AdditivePreset::constant_h, phi, Poly::constant(F8.one()), Poly{});
    auto c2 = invert_additive_case(F8, ch, AdditivePreset::constant_h);
    require_inverse(F8, c2);
    CHECK(c2.inverse == lin_to_poly(F8, lin_inverse_full(F8, phi)));

    // NQ instances found by search; at least one must permute.
    int nq = 0;
    for (Code a = 0; a < 3; ++a)
        for (Code b = 0; b < 3; ++b) {
            if (a == b || (a + b) % 3 == 0) continue;
            auto L = lin_from_coeffs(F9, Level::base, {Elem{b}, Elem{a}});
            for (Poly G : {Poly::x(), Poly::monomial(F9.one(), 2), Poly{{Elem{4}, Elem{1}}}}) {
                auto inst = additive_preset(F9, AdditivePreset::NQ, L, Poly::constant(F9.one()), G);
                try {
                    require_inverse(F9, invert_additive_case(F9, inst, AdditivePreset::NQ));
                    ++nq;
                } catch (const Error& e) {
                    CHECK(e.code() == Errc::hypothesis_violated);
                    CHECK(!is_permutation(F9, agw_polynomial(F9, inst)));
                }
            }
        }
    CHECK(nq > 0);
}

TEST_CASE("trace translates") {
    auto F9 = FieldTower::build(3, 1, 2);
    auto phi = lin_from_coeffs(F9, Level::base, {Elem{0}, Elem{1}});
    auto c0 = invert_trace_translate(F9, phi, Elem{0}, Poly::x());
    require_inverse(F9, c0);
    CHECK(c0.inverse == lin_to_poly(F9, lin_inverse_full(F9, phi)));

    // x^q + gamma T(x) with a = 1, b = 0 and a + b + T(gamma) != 0
    int closed = 0;
    for (Elem gamma : F9.elements()) {
        if (F9.add(F9.one(), F9.trace(gamma)).code == 0) continue;
        auto cert = invert_trace_translate(F9, phi, gamma, Poly::x());
        require_inverse(F9, cert);
        for (const auto& c : cert.cross_checks) closed += c.name == "quadratic_closed_form";
    }
    CHECK(closed > 0);

    // phi = x, G = x^r, T(gamma) = 1: fbar(y) = y^r + y on F_3
    auto id9 = lin_identity(F9);
    int table_cases = 0;
    for (Elem gamma : F9.elements()) {
        if (F9.trace(gamma) != F9.one()) continue;
        for (std::uint64_t r : {2u, 3u, 5u}) {
            bool fbar_perm = r != 2;
            if (fbar_perm) {
                require_inverse(F9, invert_trace_translate(F9, id9, gamma, Poly::monomial(F9.one(), r)));
                ++table_cases;
            } else {
                CHECK(code_of([&] {
                    invert_trace_translate(F9, id9, gamma, Poly::monomial(F9.one(), r));
                }) == Errc::hypothesis_violated);
            }
        }
    }
    CHECK(table_cases > 0);

    // random (phi, gamma)
    auto F8 = FieldTower::build(2, 1, 3);
    std::mt19937_64 rng(3);
    int verified = 0;
    for (auto F : {F8, F9}) {
        std::uniform_int_distribution<Code> pick(0, static_cast<Code>(F.size() - 1));
        for (int it = 0; it < 60; ++it) {
            auto L = random_base_lin(F, rng);
            if (lin_determinant(F, L).code == 0) continue;
            try {
                require_inverse(F, invert_trace_translate(F, L, Elem{pick(rng)}, Poly::x()));
                ++verified;
            } catch (const Error& e) {
                CHECK(e.code() == Errc::hypothesis_violated);
            }
        }
    }
    CHECK(verified >= 20);
    CHECK(code_of([&] { invert_trace_translate(F9, lin_zero(F9), Elem{1}, Poly::x()); }) ==
          Errc::hypothesis_violated);
}

TEST_CASE("Frobenius difference powers") {
    auto F = FieldTower::build(2, 1, 4);
    for (std::uint64_t s : {5u, 10u})
        for (Elem delta : F.elements()) {
            auto P = frobenius_difference_params(F, 2, delta);
            auto cert = invert_l1l2(F, P.L1, P.L2, P.G, s, 2);
            require_inverse(F, cert);
            CHECK(cert.formula == "frobenius_difference");
        }
    // f(x) = x + (x^4 + x + g)^5 and its stated inverse, directly
    Elem g{2};
    auto P = frobenius_difference_params(F, 2, g);
    auto cert = invert_l1l2(F, P.L1, P.L2, P.G, 5, 2);
    for (Elem x : F.elements()) {
        Elem inner = F.pow(F.add(F.add(F.pow(x, 4), x), g), 5);
        Elem fx = F.add(x, inner);
        CHECK(eval(F, cert.f, x) == fx);
        Elem back = F.sub(fx, F.pow(F.add(F.add(F.pow(fx, 4), fx), g), 5));
        CHECK(back == x);
    }
    // L1 = 0: f = G(0)^s + L2(x)
    auto L2 = parse_lin(F, "lin:[1,1,0,1]");
    REQUIRE(lin_determinant(F, L2).code != 0);
    auto c0 = invert_l1l2(F, lin_zero(F), L2, Poly{{Elem{7}, Elem{3}}}, 5, 2);
    require_inverse(F, c0);
    CHECK(code_of([&] { invert_l1l2(F, P.L1, P.L2, P.G, 3, 2); }) == Errc::bad_exponent);
    CHECK(code_of([&] { invert_l1l2(F, P.L1, P.L2, P.G, 5, 1); }) == Errc::hypothesis_violated);
}

TEST_CASE("L(x) + Q(x)^k over F_{q^2}") {
    auto F = FieldTower::build(3, 1, 2);
    for (std::uint64_t k : {2u, 4u}) {
        auto cert = invert_q2_powerQ(F, Elem{1}, Elem{0}, k);
        require_inverse(F, cert);
    }
    auto cert = invert_q2_powerQ(F, Elem{1}, Elem{0}, 2);
    for (Elem x : F.elements()) {
        Elem q = F.sub(F.pow(x, 3), x);
        CHECK(eval(F, cert.f, x) == F.add(F.pow(x, 3), F.mul(q, q)));
        Elem fx = eval(F, cert.f, x);
        Elem qf = F.sub(F.pow(fx, 3), fx);
        CHECK(F.sub(F.pow(fx, 3), F.mul(qf, qf)) == x);
    }
    CHECK(code_of([&] { invert_q2_powerQ(F, Elem{1}, Elem{0}, 3); }) == Errc::hypothesis_violated);
    CHECK(code_of([&] { invert_q2_powerQ(F, Elem{1}, Elem{1}, 2); }) == Errc::hypothesis_violated);
    auto F25 = FieldTower::build(5, 1, 2);
    for (Code a = 0; a < 5; ++a)
        for (Code b = 0; b < 5; ++b)
            if (a != b && (a + b) % 5 != 0) require_inverse(F25, invert_q2_powerQ(F25, Elem{a}, Elem{b}, 4));
}

TEST_CASE("multiterm preimages") {
    auto F8 = FieldTower::build(2, 1, 3);
    MultitermInstance id{lin_trace(F8), {{lin_identity(F8), F8.zero(), Poly::constant(F8.one())}}, Poly{}};
    for (Elem x : F8.elements()) CHECK(preimage_multiterm(F8, id, x) == x);

    auto key = linear_trace_instance(F8, lin_monomial(F8, Level::base, 1, F8.one()), Poly::constant(F8.one()));
    CHECK(code_of([&] { MultitermInverse bad(F8, key); }) == Errc::not_permutation);

    // Random instances; every permutation must be inverted pointwise.
    std::mt19937_64 rng(7);
    int seen = 0;
    for (auto [p, m, n] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 2u}, {3u, 1u, 3u}, {2u, 2u, 2u}, {2u, 1u, 4u}}) {
        auto F = FieldTower::build(p, m, n);
        std::uniform_int_distribution<Code> pick(0, static_cast<Code>(F.size() - 1));
        for (int it = 0; it < 80; ++it) {
            MultitermInstance inst;
            inst.psi = it % 3 == 0 ? lin_frobenius_minus_id(F) : lin_trace(F);
            inst.g = Poly{{Elem{pick(rng)}, Elem{pick(rng)}}};
            int r = 1 + it % 2;
            for (int i = 0; i < r; ++i) {
                Elem delta{pick(rng)};
                if (!F.in_base(lin_eval(F, inst.psi, delta))) delta = F.zero();
                Poly h = inst.psi == lin_trace(F) ? random_base_poly(F, rng, 2) : Poly::constant(Elem{1});
                inst.terms.push_back({random_base_lin(F, rng), delta, h});
            }
            try {
                MultitermInverse inv(F, inst);
                auto cert = inv.certificate();
                CHECK(cert.verified);
                for (Elem x : F.elements()) CHECK(inv.preimage(x).agrees);
                ++seen;
            } catch (const Error& e) {
                CHECK(e.code() == Errc::not_permutation);
            }
        }
    }
    CHECK(seen > 20);
}

TEST_CASE("generalized bilinear class") {
    auto F8 = FieldTower::build(2, 1, 3);
    // g = 0: f = a x^p
    auto c0 = invert_bilinear_general(F8, F8.one(), Poly{});
    require_inverse(F8, c0);
    CHECK(c0.inverse == Poly::monomial(F8.one(), 4));

    // a = 1, g = x gives fbar = 0 on F_2
    auto F2 = FieldTower::build(2, 1, 3);
    CHECK(code_of([&] { invert_bilinear_general(F2, F2.one(), Poly::x()); }) == Errc::hypothesis_violated);

    // g = x^{p-1} over F_64 with q = 4: fbar = (a + 1) x^2 forces a != 1
    auto F64 = FieldTower::build(2, 2, 3);
    CHECK(code_of([&] { invert_bilinear_general(F64, F64.one(), Poly::x()); }) == Errc::hypothesis_violated);
    for (Code a = 2; a < 4; ++a) require_inverse(F64, invert_bilinear_general(F64, Elem{a}, Poly::x()));

    // random (a, g) on F_8, F_27, F_9, F_16
    std::mt19937_64 rng(11);
    int passed = 0;
    for (auto [p, m, n] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 3u}, {3u, 1u, 2u}, {2u, 2u, 2u}, {5u, 1u, 2u}}) {
        auto F = FieldTower::build(p, m, n);
        std::uniform_int_distribution<Code> pick(1, F.q() - 1);
        for (int it = 0; it < 40; ++it) {
            try {
                auto cert = invert_bilinear_general(F, Elem{pick(rng)}, random_base_poly(F, rng, 1 + it % 3));
                require_inverse(F, cert);
                ++passed;
            } catch (const Error& e) {
                CHECK(e.code() == Errc::hypothesis_violated);
            }
        }
    }
    CHECK(passed >= 10);
}

TEST_CASE("shifted Frobenius class") {
    auto F8 = FieldTower::build(2, 1, 3);
    auto r = invert_shifted_frobenius(F8, F8.one(), F8.one(), Poly::x());
    CHECK(r.permutation);
    CHECK(r.f == Poly::monomial(F8.one(), 4));
    REQUIRE(r.certificate);
    require_inverse(F8, *r.certificate);
    CHECK(r.certificate->inverse == Poly::monomial(F8.one(), 2));
    CHECK(format_poly(r.certificate->inverse) == "poly:[0,0,1]");
    CHECK(r.b == std::vector<Elem>{Elem{1}, Elem{0}, Elem{1}});

    auto t0 = invert_shifted_frobenius(F8, Elem{2}, F8.one(), Poly::x());
    CHECK(!t0.permutation);
    CHECK(!t0.oracle_permutation);
    auto F4 = FieldTower::build(2, 1, 2);
    auto pn = invert_shifted_frobenius(F4, F4.one(), F4.one(), Poly::x());
    CHECK(!pn.permutation);
    CHECK(!pn.oracle_permutation);

    std::mt19937_64 rng(13);
    for (auto [p, m, n] : {std::tuple{2u, 1u, 3u}, {2u, 1u, 4u}, {3u, 1u, 2u}, {3u, 1u, 3u}, {2u, 2u, 3u}}) {
        auto F = FieldTower::build(p, m, n);
        std::uniform_int_distribution<Code> pick(0, static_cast<Code>(F.size() - 1));
        std::uniform_int_distribution<Code> pickc(1, F.q() - 1);
        for (int it = 0; it < 12; ++it) {
            Poly G{{Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)}}};
            auto res = invert_shifted_frobenius(F, Elem{pick(rng)}, Elem{pickc(rng)}, G);
            CHECK(res.permutation == res.oracle_permutation);
            if (res.certificate) require_inverse(F, *res.certificate);
        }
    }

    for (unsigned n : {3u, 5u}) {
        auto F = FieldTower::build(2, 1, n);
        int count = 0;
        for (Elem a : F.elements()) {
            if (a.code == 0 || F.trace(F.inv(a)) != F.one()) continue;
            auto res = invert_shifted_frobenius(F, F.inv(a), F.one(), Poly::x());
            REQUIRE(res.certificate);
            require_inverse(F, *res.certificate);
            CHECK(res.b == b_case_split(F, a));
            ++count;
        }
        CHECK(count > 0);
    }
}
