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

#include "ppinv/poly.hpp"

#include <algorithm>

#include "ppinv/parallel.hpp"

namespace ppinv {

Poly Poly::constant(Elem c) { return trimmed(Poly{{c}}); }

Poly Poly::monomial(Elem c, std::uint64_t k) {
    if (c.code == 0) return {};
    Poly f;
    f.coeffs.assign(k + 1, Elem{0});
    f.coeffs[k] = c;
    return f;
}

Poly trimmed(Poly f) {
    while (!f.coeffs.empty() && f.coeffs.back().code == 0) f.coeffs.pop_back();
    return f;
}

Poly reduce(const FieldTower& F, const Poly& f) {
    const std::uint64_t Q = F.size();
    if (f.coeffs.size() <= Q) return trimmed(f);
    Poly r;
    r.coeffs.assign(Q, Elem{0});
    for (std::uint64_t e = 0; e < f.coeffs.size(); ++e) {
        std::uint64_t t = e < Q ? e : (e - 1) % (Q - 1) + 1;
        r.coeffs[t] = F.add(r.coeffs[t], f.coeffs[e]);
    }
    return trimmed(std::move(r));
}

Poly poly_add(const FieldTower& F, const Poly& f, const Poly& g) {
    Poly r;
    r.coeffs.resize(std::max(f.coeffs.size(), g.coeffs.size()));
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.add(f.coeff(i), g.coeff(i));
    return trimmed(std::move(r));
}

Poly poly_scale(const FieldTower& F, const Poly& f, Elem c) {
    Poly r = f;
    for (auto& a : r.coeffs) a = F.mul(a, c);
    return trimmed(std::move(r));
}

Elem eval(const FieldTower& F, const Poly& f, Elem a) {
    Elem acc{0};
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, a), f.coeffs[i]);
    return acc;
}

std::vector<Elem> evaluate_all(const FieldTower& F, const Poly& f) {
    F.require_desk_scale("evaluate");
    std::vector<Elem> out(F.size());
    parallel_for(F.size(), [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t c = b; c < e; ++c) out[c] = eval(F, f, Elem{static_cast<Code>(c)});
    });
    return out;
}

std::vector<Elem> evaluate_all(const FieldTower& F, const UnaryMap& f) {
    F.require_desk_scale("evaluate");
    std::vector<Elem> out(F.size());
    parallel_for(F.size(), [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t c = b; c < e; ++c) out[c] = f(Elem{static_cast<Code>(c)});
    });
    return out;
}

// The indicator of a is 1 - (x - a)^{Q-1} and (x - a)^{Q-1} = sum_k a^{Q-1-k} x^k
// in characteristic p, so c_0 = v(0) and c_k = -sum_a v(a) a^{Q-1-k} for k >= 1.
Poly interpolate_values(const FieldTower& F, std::span<const Elem> values) {
    F.require_desk_scale("interpolate");
    const std::uint64_t Q = F.size();
    if (values.size() != Q) throw Error(Errc::internal, "value table must cover the field");
    Poly r;
    r.coeffs.assign(Q, Elem{0});
    r.coeffs[0] = values[0];
    parallel_for(Q - 1, [&](std::uint64_t b, std::uint64_t e) {
        // handles exponents k in [b + 1, e + 1)
        std::vector<Elem> acc(e - b, Elem{0});
        for (std::uint64_t c = 1; c < Q; ++c) {
            Elem v = values[c];
            if (v.code == 0) continue;
            Elem a{static_cast<Code>(c)};
            Elem t = F.mul(v, F.pow(a, Q - 1 - e));
            for (std::uint64_t k = e; k > b; --k) {
                acc[k - 1 - b] = F.add(acc[k - 1 - b], t);
                t = F.mul(t, a);
            }
        }
        for (std::uint64_t k = b; k < e; ++k) r.coeffs[k + 1] = F.neg(acc[k - b]);
    });
    // 0^0 = 1, so the node 0 also feeds the top coefficient.
    if (Q > 1) r.coeffs[Q - 1] = F.sub(r.coeffs[Q - 1], values[0]);
    return trimmed(std::move(r));
}

Poly interpolate(const FieldTower& F, std::span<const std::pair<Elem, Elem>> points) {
    std::vector<Elem> xs;
    xs.reserve(points.size());
    for (auto& [x, y] : points) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    auto dup = std::adjacent_find(xs.begin(), xs.end());
    if (dup != xs.end()) throw Error(Errc::duplicate_node, "repeated interpolation node", dup->code);

    if (F.desk_scale() && points.size() == F.size()) {
        std::vector<Elem> values(F.size());
        for (auto& [x, y] : points) values[x.code] = y;
        return interpolate_values(F, values);
    }
    // Newton divided differences.
    const std::size_t N = points.size();
    std::vector<Elem> dd(N);
    for (std::size_t i = 0; i < N; ++i) dd[i] = points[i].second;
    for (std::size_t j = 1; j < N; ++j)
        for (std::size_t i = N - 1; i >= j; --i)
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(points[i].first, points[i - j].first));
    Poly r;
    r.coeffs.assign(N, Elem{0});
    // Horner on the Newton form, multiplying by (x - x_i) from the top down.
    for (std::size_t i = N; i-- > 0;) {
        // r = r * (x - x_i) + dd[i]
        Elem xi = points[i].first;
        std::vector<Elem> next(N, Elem{0});
        for (std::size_t k = 0; k + 1 < N; ++k) {
            next[k + 1] = F.add(next[k + 1], r.coeffs[k]);
            next[k] = F.sub(next[k], F.mul(r.coeffs[k], xi));
        }
        next[0] = F.add(next[0], dd[i]);
        r.coeffs = std::move(next);
    }
    return reduce(F, r);
}

Poly interpolate_map(const FieldTower& F, const UnaryMap& f) { return interpolate_values(F, evaluate_all(F, f)); }

Poly compose_mod(const FieldTower& F, const Poly& f, const Poly& g) {
    auto gv = evaluate_all(F, g);
    return interpolate_map(F, [&](Elem a) { return eval(F, f, gv[a.code]); });
}

std::vector<Elem> inverse_table(const FieldTower& F, std::span<const Elem> values) {
    std::vector<Elem> inv(F.size());
    std::vector<bool> seen(F.size(), false);
    for (std::uint64_t c = 0; c < values.size(); ++c) {
        Elem y = values[c];
        if (seen[y.code])
            throw Error(Errc::not_permutation, "value " + std::to_string(y.code) + " is taken twice",
                        static_cast<std::uint32_t>(c));
        seen[y.code] = true;
        inv[y.code] = Elem{static_cast<Code>(c)};
    }
    return inv;
}

bool is_permutation(const FieldTower& F, const Poly& f) {
    auto values = evaluate_all(F, f);
    std::vector<bool> seen(F.size(), false);
    for (Elem y : values) {
        if (seen[y.code]) return false;
        seen[y.code] = true;
    }
    return true;
}

Poly brute_inverse(const FieldTower& F, const Poly& f) {
    auto values = evaluate_all(F, f);
    return interpolate_values(F, inverse_table(F, values));
}

bool functions_equal(const FieldTower& F, const Poly& f, const Poly& g) {
    F.require_desk_scale("functions_equal");
    return reduce(F, f) == reduce(F, g);
}

Elem RestrictedInverse::lookup(Elem y) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), y, [](const auto& pr, Elem v) { return pr.first < v; });
    if (it == pairs_.end() || it->first != y)
        throw Error(Errc::not_bijective_on_domain, "value outside the codomain of the restricted inverse", y.code);
    return it->second;
}

bool RestrictedInverse::covers(Elem y) const noexcept {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), y, [](const auto& pr, Elem v) { return pr.first < v; });
    return it != pairs_.end() && it->first == y;
}

Poly RestrictedInverse::to_poly(const FieldTower& F) const {
    std::vector<Elem> values(F.size(), Elem{0});
    for (auto& [y, x] : pairs_) values[y.code] = x;
    return interpolate_values(F, values);
}

RestrictedInverse restricted_inverse_table(const FieldTower& F, const UnaryMap& f, std::span<const Elem> domain,
                                           std::span<const Elem> codomain) {
    std::vector<Elem> cod(codomain.begin(), codomain.end());
    std::sort(cod.begin(), cod.end());
    if (std::adjacent_find(cod.begin(), cod.end()) != cod.end() || cod.size() != domain.size())
        throw Error(Errc::not_bijective_on_domain, "domain and codomain sizes differ");
    std::vector<std::pair<Elem, Elem>> pairs;
    pairs.reserve(domain.size());
    for (Elem x : domain) {
        Elem y = f(x);
        if (!std::binary_search(cod.begin(), cod.end(), y))
            throw Error(Errc::not_bijective_on_domain, "image leaves the codomain", x.code);
        pairs.emplace_back(y, x);
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first == pairs[i - 1].first)
            throw Error(Errc::not_bijective_on_domain, "map is not injective on the domain", pairs[i].second.code);
    (void)F;
    return RestrictedInverse(std::move(pairs));
}

RestrictedInverse restricted_inverse_table(const FieldTower& F, const Poly& f, std::span<const Elem> domain,
                                           std::span<const Elem> codomain) {
    return restricted_inverse_table(F, [&](Elem a) { return eval(F, f, a); }, domain, codomain);
}

}  // namespace ppinv
