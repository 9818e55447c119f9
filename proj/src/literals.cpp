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

#include "ppinv/literals.hpp"

#include <charconv>

namespace ppinv {

namespace {

std::vector<Elem> parse_bracketed(const FieldTower& F, std::string_view text, std::string_view prefix, char open,
                                  char close) {
    const std::string full(text);
    if (!text.starts_with(prefix) || text.size() < prefix.size() + 2 || text[prefix.size()] != open ||
        text.back() != close)
        throw Error(Errc::parse_error, "expected " + std::string(prefix) + open + "..." + close + " but got '" + full + "'");
    std::string_view body = text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
    std::vector<Elem> out;
    if (body.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        auto tok = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_elem(F, tok));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& v, auto&& fmt) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt(v[i]);
    }
    return s;
}

}  // namespace

Elem parse_elem(const FieldTower& F, std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(Errc::parse_error, "bad element literal '" + std::string(text) + "'");
    if (v >= F.size())
        throw Error(Errc::parse_error,
                    "element literal '" + std::string(text) + "' outside F_" + std::to_string(F.size()));
    return Elem{static_cast<Code>(v)};
}

Poly parse_poly(const FieldTower& F, std::string_view text) {
    return reduce(F, Poly{parse_bracketed(F, text, "poly:", '[', ']')});
}

LinPoly parse_lin(const FieldTower& F, std::string_view text) {
    auto c = parse_bracketed(F, text, "lin:", '[', ']');
    if (c.size() != F.n())
        throw Error(Errc::parse_error, "'" + std::string(text) + "' needs exactly " + std::to_string(F.n()) +
                                           " coefficients");
    return LinPoly{Level::base, std::move(c)};
}

SubspaceBasis parse_span(const FieldTower& F, std::string_view text) {
    auto g = parse_bracketed(F, text, "span", '{', '}');
    return SubspaceBasis::span(F, Level::base, g);
}

std::string format_elem(Elem a) { return std::to_string(a.code); }

std::string format_poly(const Poly& f) {
    return "poly:[" + join(f.coeffs, [](Elem e) { return format_elem(e); }) + "]";
}

std::string format_lin(const LinPoly& L) {
    return (L.level == Level::base ? "lin:[" : "plin:[") + join(L.coeffs, [](Elem e) { return format_elem(e); }) + "]";
}

std::string format_span(const FieldTower& F, const SubspaceBasis& V) {
    return "span{" + join(V.basis_elements(F), [](Elem e) { return format_elem(e); }) + "}";
}

std::string format_matrix(const Matrix& M) {
    std::string s;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        if (i) s += ';';
        s += join(M.row(i), [](Elem e) { return format_elem(e); });
    }
    return s;
}

}  // namespace ppinv
