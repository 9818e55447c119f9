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

#include "ppinv/field.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <numeric>

namespace ppinv {

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b)
            throw Error(Errc::overflow, "integer power overflows 64 bits");
        r *= b;
    }
    return r;
}

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace {

constexpr Code no_log = std::numeric_limits<Code>::max();

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Arithmetic of a small coefficient field, used for modulus validation.
struct CoeffField {
    std::uint32_t size;
    std::function<Code(Code, Code)> add, sub, mul;
    std::function<Code(Code)> inv;
};

// Remainder of a modulo a monic b (ascending coefficients).
std::vector<Code> poly_rem(const CoeffField& k, std::vector<Code> a, const std::vector<Code>& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        Code lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i) a[shift + i] = k.sub(a[shift + i], k.mul(lead, b[i]));
        a.pop_back();
    }
    return a;
}

bool is_irreducible(const CoeffField& k, const std::vector<Code>& f) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = checked_pow(k.size, d);
        std::vector<Code> g(d + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            std::uint64_t u = t;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<Code>(u % k.size);
                u /= k.size;
            }
            g[d] = 1;
            auto r = poly_rem(k, f, g);
            if (std::all_of(r.begin(), r.end(), [](Code c) { return c == 0; })) return false;
        }
    }
    return true;
}

std::vector<Code> smallest_irreducible(const CoeffField& k, std::uint32_t deg) {
    std::uint64_t count = checked_pow(k.size, deg);
    std::vector<Code> f(deg + 1);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::uint64_t u = t;
        for (std::uint32_t i = 0; i < deg; ++i) {
            f[i] = static_cast<Code>(u % k.size);
            u /= k.size;
        }
        f[deg] = 1;
        if (is_irreducible(k, f)) return f;
    }
    throw Error(Errc::internal, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace

struct FieldTower::Impl {
    std::uint32_t p = 0, m = 0, n = 0, q = 0;
    std::uint64_t size = 0;
    std::uint64_t desk_limit = default_desk_limit;
    std::vector<Code> mod_q, mod_qn;
    std::vector<std::uint64_t> ppow;  // p^t for t <= mn
    std::vector<std::uint64_t> qpow;  // q^i for i <= n

    // Base field tables (size q) and top tables (size q^n).
    std::vector<Code> bexp, blog;
    std::vector<Code> exp, log, zech;

    Code add_digits(Code a, Code b, unsigned count) const {
        if (p == 2) return a ^ b;
        Code r = 0;
        for (unsigned t = 0; t < count; ++t) {
            Code da = a % p, db = b % p;
            a /= p;
            b /= p;
            r += static_cast<Code>(((da + db) % p) * ppow[t]);
        }
        return r;
    }

    Code neg_digits(Code a, unsigned count) const {
        if (p == 2) return a;
        Code r = 0;
        for (unsigned t = 0; t < count; ++t) {
            Code d = a % p;
            a /= p;
            r += static_cast<Code>(((p - d) % p) * ppow[t]);
        }
        return r;
    }

    Code base_add(Code a, Code b) const { return add_digits(a, b, m); }
    Code base_sub(Code a, Code b) const { return add_digits(a, neg_digits(b, m), m); }

    Code base_mul_slow(Code a, Code b) const {
        std::vector<std::uint64_t> da(m), db(m), prod(2 * m - 1, 0);
        for (unsigned j = 0; j < m; ++j) {
            da[j] = a % p;
            a /= p;
            db[j] = b % p;
            b /= p;
        }
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (unsigned d = 2 * m - 2; d >= m; --d) {
            std::uint64_t lead = prod[d];
            if (lead != 0)
                for (unsigned i = 0; i <= m; ++i)
                    prod[d - m + i] = (prod[d - m + i] + (p - lead) * mod_q[i]) % p;
        }
        Code r = 0;
        for (unsigned j = 0; j < m; ++j) r += static_cast<Code>(prod[j] * ppow[j]);
        return r;
    }

    Code base_mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        if (!blog.empty()) return bexp[(static_cast<std::uint64_t>(blog[a]) + blog[b]) % (q - 1)];
        return base_mul_slow(a, b);
    }

    Code base_inv(Code a) const {
        if (!blog.empty()) return bexp[(q - 1 - blog[a]) % (q - 1)];
        Code r = 1;
        std::uint64_t e = q - 2;
        Code b = a;
        while (e) {
            if (e & 1) r = base_mul_slow(r, b);
            b = base_mul_slow(b, b);
            e >>= 1;
        }
        return r;
    }

    Code mul_slow(Code a, Code b) const {
        std::vector<Code> da(n), db(n), prod(2 * n - 1, 0);
        for (unsigned i = 0; i < n; ++i) {
            da[i] = a % q;
            a /= q;
            db[i] = b % q;
            b /= q;
        }
        for (unsigned i = 0; i < n; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < n; ++j) prod[i + j] = base_add(prod[i + j], base_mul(da[i], db[j]));
        }
        for (unsigned d = 2 * n - 2; d >= n; --d) {
            Code lead = prod[d];
            if (lead != 0)
                for (unsigned i = 0; i <= n; ++i) prod[d - n + i] = base_sub(prod[d - n + i], base_mul(lead, mod_qn[i]));
        }
        Code r = 0;
        for (unsigned i = 0; i < n; ++i) r += static_cast<Code>(prod[i] * qpow[i]);
        return r;
    }

    Code pow_slow(Code a, std::uint64_t e) const {
        Code r = 1;
        while (e) {
            if (e & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            e >>= 1;
        }
        return r;
    }

    void build_base_tables() {
        if (q > desk_limit || q < 2) return;
        std::vector<Code> e(q - 1), l(q, no_log);
        auto factors = prime_factors(q - 1);
        for (Code g = 1; g < q; ++g) {
            bool primitive = true;
            for (auto r : factors) {
                Code x = 1;
                for (std::uint64_t k = 0; k < (q - 1) / r; ++k) x = base_mul_slow(x, g);
                if (x == 1) {
                    primitive = false;
                    break;
                }
            }
            if (!primitive) continue;
            Code x = 1;
            for (Code i = 0; i < q - 1; ++i) {
                e[i] = x;
                l[x] = i;
                x = base_mul_slow(x, g);
            }
            bexp = std::move(e);
            blog = std::move(l);
            return;
        }
    }

    void build_top_tables() {
        if (size > desk_limit) return;
        const std::uint64_t order = size - 1;
        auto factors = prime_factors(order);
        Code gen = 1;
        for (Code g = 1; g < size; ++g) {
            bool primitive = true;
            for (auto r : factors)
                if (pow_slow(g, order / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gen = g;
                break;
            }
        }
        exp.assign(order, 0);
        log.assign(size, no_log);
        Code x = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            exp[i] = x;
            log[x] = static_cast<Code>(i);
            x = mul_slow(x, gen);
        }
        if (p != 2) {
            zech.assign(order, no_log);
            for (std::uint64_t d = 0; d < order; ++d) {
                Code s = add_digits(1, exp[d], m * n);
                zech[d] = s == 0 ? no_log : log[s];
            }
        }
    }
};

FieldTower FieldTower::build(std::uint32_t p, std::uint32_t m, std::uint32_t n, std::optional<std::vector<Code>> mod_q,
                             std::optional<std::vector<Code>> mod_qn, std::uint64_t desk_limit) {
    if (!is_prime(p)) throw Error(Errc::not_prime, "p=" + std::to_string(p) + " is not prime");
    if (m < 1 || n < 1) throw Error(Errc::degree_mismatch, "extension degrees must be at least 1");
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->m = m;
    impl->n = n;
    impl->desk_limit = desk_limit;
    std::uint64_t q = checked_pow(p, m);
    std::uint64_t size = checked_pow(q, n);
    if (size > std::numeric_limits<Code>::max())
        throw Error(Errc::overflow, "field order exceeds the 32-bit element encoding");
    impl->q = static_cast<std::uint32_t>(q);
    impl->size = size;
    for (unsigned t = 0; t <= m * n; ++t) impl->ppow.push_back(checked_pow(p, t));
    for (unsigned i = 0; i <= n; ++i) impl->qpow.push_back(checked_pow(q, i));

    CoeffField fp{p,
                  [p](Code a, Code b) { return (a + b) % p; },
                  [p](Code a, Code b) { return (a + p - b) % p; },
                  [p](Code a, Code b) { return static_cast<Code>(std::uint64_t{a} * b % p); },
                  [p](Code a) { return static_cast<Code>(powmod(a, p - 2, p)); }};

    if (mod_q) {
        if (mod_q->size() != m + 1 || mod_q->back() != 1)
            throw Error(Errc::degree_mismatch, "modq must be monic of degree " + std::to_string(m));
        for (Code c : *mod_q)
            if (c >= p) throw Error(Errc::degree_mismatch, "modq coefficient " + std::to_string(c) + " not in F_p");
        if (!is_irreducible(fp, *mod_q)) throw Error(Errc::not_irreducible, "modq is reducible over F_p");
        impl->mod_q = *mod_q;
    } else {
        impl->mod_q = smallest_irreducible(fp, m);
    }
    impl->build_base_tables();

    const Impl* raw = impl.get();
    CoeffField fq{raw->q,
                  [raw](Code a, Code b) { return raw->base_add(a, b); },
                  [raw](Code a, Code b) { return raw->base_sub(a, b); },
                  [raw](Code a, Code b) { return raw->base_mul(a, b); },
                  [raw](Code a) { return raw->base_inv(a); }};
    if (mod_qn) {
        if (mod_qn->size() != n + 1 || mod_qn->back() != 1)
            throw Error(Errc::degree_mismatch, "modqn must be monic of degree " + std::to_string(n));
        for (Code c : *mod_qn)
            if (c >= q) throw Error(Errc::degree_mismatch, "modqn coefficient " + std::to_string(c) + " not in F_q");
        if (!is_irreducible(fq, *mod_qn)) throw Error(Errc::not_irreducible, "modqn is reducible over F_q");
        impl->mod_qn = *mod_qn;
    } else {
        impl->mod_qn = smallest_irreducible(fq, n);
    }
    impl->build_top_tables();
    return FieldTower(std::move(impl));
}

std::uint32_t FieldTower::p() const noexcept { return impl_->p; }
std::uint32_t FieldTower::m() const noexcept { return impl_->m; }
std::uint32_t FieldTower::n() const noexcept { return impl_->n; }
std::uint32_t FieldTower::q() const noexcept { return impl_->q; }
std::uint64_t FieldTower::size() const noexcept { return impl_->size; }
const std::vector<Code>& FieldTower::mod_q() const noexcept { return impl_->mod_q; }
const std::vector<Code>& FieldTower::mod_qn() const noexcept { return impl_->mod_qn; }
std::uint64_t FieldTower::desk_limit() const noexcept { return impl_->desk_limit; }
bool FieldTower::tabulated() const noexcept { return !impl_->log.empty(); }

void FieldTower::require_desk_scale(std::string_view what) const {
    if (!desk_scale())
        throw Error(Errc::desk_scale_exceeded, std::string(what) + ": field of order " + std::to_string(size()) +
                                                   " exceeds the desk-scale limit " + std::to_string(desk_limit()));
}

bool FieldTower::same_as(const FieldTower& other) const noexcept {
    if (impl_ == other.impl_) return true;
    return p() == other.p() && m() == other.m() && n() == other.n() && mod_q() == other.mod_q() &&
           mod_qn() == other.mod_qn();
}

namespace {
std::string join(const std::vector<Code>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}
}  // namespace

std::string FieldTower::spec() const {
    return std::to_string(p()) + ':' + std::to_string(m()) + ':' + std::to_string(n()) + ":modq=" + join(mod_q()) +
           ":modqn=" + join(mod_qn());
}

Elem FieldTower::element(std::uint64_t code) const {
    if (code >= size())
        throw Error(Errc::tower_mismatch,
                    "element " + std::to_string(code) + " outside F_" + std::to_string(size()));
    return Elem{static_cast<Code>(code)};
}

Elem FieldTower::from_int(std::int64_t k) const noexcept {
    std::int64_t r = k % static_cast<std::int64_t>(p());
    if (r < 0) r += p();
    return Elem{static_cast<Code>(r)};
}

Elem FieldTower::add(Elem a, Elem b) const noexcept {
    const Impl& I = *impl_;
    if (I.p == 2) return Elem{a.code ^ b.code};
    if (I.zech.empty()) return Elem{I.add_digits(a.code, b.code, I.m * I.n)};
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    const std::uint64_t order = I.size - 1;
    std::uint64_t la = I.log[a.code], lb = I.log[b.code];
    Code z = I.zech[(lb + order - la) % order];
    if (z == no_log) return Elem{0};
    return Elem{I.exp[(la + z) % order]};
}

Elem FieldTower::neg(Elem a) const noexcept {
    const Impl& I = *impl_;
    if (I.p == 2 || a.code == 0) return a;
    if (I.log.empty()) return Elem{I.neg_digits(a.code, I.m * I.n)};
    const std::uint64_t order = I.size - 1;
    return Elem{I.exp[(I.log[a.code] + order / 2) % order]};
}

Elem FieldTower::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FieldTower::mul(Elem a, Elem b) const noexcept {
    const Impl& I = *impl_;
    if (a.code == 0 || b.code == 0) return Elem{0};
    if (I.log.empty()) return Elem{I.mul_slow(a.code, b.code)};
    std::uint64_t s = std::uint64_t{I.log[a.code]} + I.log[b.code];
    if (s >= I.size - 1) s -= I.size - 1;
    return Elem{I.exp[s]};
}

Elem FieldTower::mul_reference(Elem a, Elem b) const noexcept { return Elem{impl_->mul_slow(a.code, b.code)}; }

Elem FieldTower::add_reference(Elem a, Elem b) const noexcept {
    return Elem{impl_->add_digits(a.code, b.code, m() * n())};
}

Elem FieldTower::pow(Elem a, std::uint64_t e) const noexcept {
    const Impl& I = *impl_;
    if (e == 0) return one();
    if (a.code == 0) return zero();
    const std::uint64_t order = I.size - 1;
    if (I.log.empty()) return Elem{I.pow_slow(a.code, e % order == 0 ? order : e % order)};
    return Elem{I.exp[mulmod(I.log[a.code], e % order, order)]};
}

Elem FieldTower::safe_inv(Elem a) const noexcept { return pow(a, size() - 2); }

Elem FieldTower::inv(Elem a) const {
    if (a.code == 0) throw Error(Errc::division_by_zero, "inverse of zero");
    return safe_inv(a);
}

Elem FieldTower::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem FieldTower::frobenius(Elem a, std::uint64_t i) const noexcept { return pow(a, impl_->qpow[i % n()]); }

Elem FieldTower::frobenius_p(Elem a, std::uint64_t i) const noexcept {
    return pow(a, impl_->ppow[i % (m() * n())]);
}

Elem FieldTower::frobenius(Elem a, Level level, std::uint64_t i) const noexcept {
    return level == Level::base ? frobenius(a, i) : frobenius_p(a, i);
}

Elem FieldTower::trace(Elem a) const noexcept {
    Elem s = zero();
    Elem x = a;
    for (unsigned i = 0; i < n(); ++i) {
        s = add(s, x);
        x = frobenius(x, 1);
    }
    return s;
}

Elem FieldTower::norm(Elem a) const noexcept { return pow(a, (size() - 1) / (q() - 1)); }

Elem FieldTower::absolute_norm(Elem y) const noexcept { return pow(y, (q() - 1) / (p() - 1)); }

std::vector<Elem> FieldTower::elements() const {
    require_desk_scale("enumerate_field");
    std::vector<Elem> out(size());
    for (std::uint64_t c = 0; c < size(); ++c) out[c] = Elem{static_cast<Code>(c)};
    return out;
}

unsigned FieldTower::dim(Level level) const noexcept { return level == Level::base ? n() : m() * n(); }

std::uint32_t FieldTower::scalar_count(Level level) const noexcept { return level == Level::base ? q() : p(); }

Elem FieldTower::basis(Level level, unsigned t) const noexcept {
    return Elem{static_cast<Code>(level == Level::base ? impl_->qpow[t] : impl_->ppow[t])};
}

std::vector<Elem> FieldTower::coordinates(Elem a, Level level) const {
    const unsigned d = dim(level);
    const Code b = scalar_count(level);
    std::vector<Elem> out(d);
    Code c = a.code;
    for (unsigned t = 0; t < d; ++t) {
        out[t] = Elem{c % b};
        c /= b;
    }
    return out;
}

Elem FieldTower::from_coordinates(std::span<const Elem> coords, Level level) const {
    const Code b = scalar_count(level);
    if (coords.size() != dim(level)) throw Error(Errc::tower_mismatch, "coordinate vector has wrong length");
    std::uint64_t c = 0;
    for (std::size_t t = coords.size(); t-- > 0;) {
        if (coords[t].code >= b) throw Error(Errc::tower_mismatch, "coordinate outside the scalar field");
        c = c * b + coords[t].code;
    }
    return Elem{static_cast<Code>(c)};
}

std::vector<std::vector<Code>> FieldTower::digits(Elem a) const {
    std::vector<std::vector<Code>> d(n(), std::vector<Code>(m()));
    Code c = a.code;
    for (unsigned i = 0; i < n(); ++i)
        for (unsigned j = 0; j < m(); ++j) {
            d[i][j] = c % p();
            c /= p();
        }
    return d;
}

Elem FieldTower::from_digits(const std::vector<std::vector<Code>>& d) const {
    if (d.size() != n()) throw Error(Errc::tower_mismatch, "element must have n digits");
    std::uint64_t c = 0;
    for (std::size_t i = n(); i-- > 0;) {
        if (d[i].size() != m()) throw Error(Errc::tower_mismatch, "sub-element must have m digits");
        for (std::size_t j = m(); j-- > 0;) {
            if (d[i][j] >= p()) throw Error(Errc::tower_mismatch, "digit outside F_p");
            c = c * p() + d[i][j];
        }
    }
    return Elem{static_cast<Code>(c)};
}

namespace {

std::uint64_t parse_uint(std::string_view tok, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
        throw Error(Errc::parse_error, "bad " + std::string(what) + " '" + std::string(tok) + "'");
    return v;
}

std::vector<Code> parse_list(std::string_view tok, std::string_view what) {
    std::vector<Code> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = tok.find(',', start);
        auto piece = tok.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::uint64_t v = parse_uint(piece, what);
        if (v > std::numeric_limits<Code>::max())
            throw Error(Errc::parse_error, "bad " + std::string(what) + " '" + std::string(piece) + "'");
        out.push_back(static_cast<Code>(v));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

FieldTower parse_field_spec(std::string_view text, std::uint64_t desk_limit) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 5)
        throw Error(Errc::parse_error, "field spec '" + std::string(text) + "' is not p:m:n[:modq=..][:modqn=..]");
    auto p = parse_uint(parts[0], "p");
    auto m = parse_uint(parts[1], "m");
    auto n = parse_uint(parts[2], "n");
    if (p > std::numeric_limits<std::uint32_t>::max() || m > 64 || n > 64)
        throw Error(Errc::parse_error, "field spec '" + std::string(text) + "' out of range");
    std::optional<std::vector<Code>> mq, mqn;
    for (std::size_t i = 3; i < parts.size(); ++i) {
        if (parts[i].starts_with("modq=") && !mq) {
            mq = parse_list(parts[i].substr(5), "modq coefficient");
        } else if (parts[i].starts_with("modqn=") && !mqn) {
            mqn = parse_list(parts[i].substr(6), "modqn coefficient");
        } else {
            throw Error(Errc::parse_error, "unexpected field spec part '" + std::string(parts[i]) + "'");
        }
    }
    return FieldTower::build(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m),
                             static_cast<std::uint32_t>(n), mq, mqn, desk_limit);
}

}  // namespace ppinv
