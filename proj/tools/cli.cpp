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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppinv/error.hpp"
#include "ppinv/field.hpp"
#include "ppinv/inverse_formulas.hpp"
#include "ppinv/linearized.hpp"
#include "ppinv/literals.hpp"
#include "ppinv/parallel.hpp"
#include "ppinv/poly.hpp"
#include "ppinv/subspace.hpp"

namespace ppinv::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void usage(const std::string& what) { throw UsageError(what); }

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::uint64_t parse_uint(std::string_view key, const std::string& text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) usage("bad integer '" + text + "' for " + std::string(key));
    return v;
}

/// poly:[..], lin:[..], or a sum of terms c, x, x^k, c*x, c*x^k.
Poly parse_poly_value(const FieldTower& F, const std::string& text) {
    if (starts_with(text, "poly:")) return parse_poly(F, text);
    if (starts_with(text, "lin:")) return lin_to_poly(F, parse_lin(F, text));
    if (text.empty()) usage("empty polynomial");
    Poly f;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('+', pos);
        if (end == std::string::npos) end = text.size();
        std::string term = text.substr(pos, end - pos);
        Elem c = F.one();
        std::uint64_t deg = 0;
        std::size_t x = term.find('x');
        if (x == std::string::npos) {
            c = parse_elem(F, term);
        } else {
            std::string coef = term.substr(0, x), tail = term.substr(x + 1);
            if (!coef.empty()) {
                if (coef.back() != '*') usage("bad polynomial term '" + term + "'");
                coef.pop_back();
                c = parse_elem(F, coef);
            }
            if (tail.empty()) deg = 1;
            else if (tail[0] == '^') deg = parse_uint("exponent", tail.substr(1));
            else usage("bad polynomial term '" + term + "'");
        }
        f = poly_add(F, f, Poly::monomial(c, deg));
        pos = end + 1;
    }
    return reduce(F, f);
}

/// lin:[..] or one of the names x, T, Q, 0.
LinPoly parse_lin_value(const FieldTower& F, const std::string& text) {
    if (text == "x") return lin_identity(F);
    if (text == "T") return lin_trace(F);
    if (text == "Q") return lin_frobenius_minus_id(F);
    if (text == "0") return lin_zero(F);
    return parse_lin(F, text);
}

std::string normalize_key(std::string key) {
    static const std::map<std::string, std::string> aliases{
        {"\xCE\xB1", "alpha"}, {"\xCE\xB3", "gamma"}, {"\xCE\xB4", "delta"},
        {"\xCF\x86", "phi"},   {"\xCF\x88", "psi"},   {"\xCF\x88\xCC\x84", "psibar"}};
    auto it = aliases.find(key);
    return it == aliases.end() ? key : it->second;
}

/// Splits on commas outside brackets and braces.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '[' || ch == '{' || ch == '(') ++depth;
        if (ch == ']' || ch == '}' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

/// key=value parameters; every key must be consumed by the family.
class Params {
   public:
    void set(const std::string& token) {
        auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) usage("parameter '" + token + "' is not key=value");
        std::string key = normalize_key(token.substr(0, eq));
        if (values_.count(key)) usage("duplicate parameter '" + key + "'");
        values_[key] = token.substr(eq + 1);
    }
    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::string v = it->second;
        values_.erase(it);
        return v;
    }
    std::string need(const std::string& key) {
        auto v = take(key);
        if (!v) usage("missing parameter '" + key + "'");
        return *v;
    }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void finish() const {
        if (!values_.empty()) usage("unknown parameter '" + values_.begin()->first + "'");
    }

   private:
    std::map<std::string, std::string> values_;
};

Params load_params(const std::string& source, std::istream& in) {
    Params P;
    if (starts_with(source, "params(") && source.back() == ')') {
        for (const auto& tok : split_top(source.substr(7, source.size() - 8)))
            if (!tok.empty()) P.set(tok);
        return P;
    }
    std::ifstream file;
    std::istream* is = &in;
    if (source != "-") {
        file.open(source);
        if (!file) usage("cannot read parameter file '" + source + "'");
        is = &file;
    }
    std::string line;
    while (std::getline(*is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string tok;
        while (words >> tok) P.set(tok);
    }
    return P;
}

bool checked_false(Errc c) {
    switch (c) {
        case Errc::hypothesis_violated:
        case Errc::not_permutation:
        case Errc::bad_exponent:
        case Errc::no_branch_applies:
        case Errc::not_bijective_on_subspace:
        case Errc::not_bijective_on_domain:
        case Errc::singular_dickson:
        case Errc::singular_basis_system:
        case Errc::no_suitable_root:
        case Errc::no_solution:
        case Errc::zero_c:
        case Errc::trace_zero:
            return true;
        default:
            return false;
    }
}

void print_certificate(std::ostream& out, const InverseCertificate& cert) {
    std::size_t ok = std::count_if(cert.cross_checks.begin(), cert.cross_checks.end(),
                                   [](const CrossCheck& c) { return c.passed; });
    out << "family=" << cert.family << " formula=" << cert.formula << " checks=" << ok << "/"
        << cert.cross_checks.size() << " verified=" << (cert.verified ? "true" : "false")
        << " inverse=" << format_poly(cert.inverse);
    if (cert.counterexample) out << " counterexample=" << format_elem(*cert.counterexample);
    out << "\n";
}

int certificate_status(const InverseCertificate& cert) {
    return cert.verified && cert.all_checks_passed() ? exit_ok : exit_false;
}

AdditivePreset parse_preset(const std::string& s) {
    if (s == "general") return AdditivePreset::general;
    if (s == "QT") return AdditivePreset::QT;
    if (s == "TQ") return AdditivePreset::TQ;
    if (s == "NQ") return AdditivePreset::NQ;
    if (s == "constant_h") return AdditivePreset::constant_h;
    usage("unknown preset '" + s + "'");
}

int run_family(const std::string& family, const FieldTower& F, Params& P, std::ostream& out) {
    auto elem = [&](const std::string& key, std::optional<Elem> dflt = std::nullopt) {
        auto v = P.take(key);
        if (!v) {
            if (dflt) return *dflt;
            usage("missing parameter '" + key + "'");
        }
        return parse_elem(F, *v);
    };
    auto poly = [&](const std::string& key, std::optional<Poly> dflt = std::nullopt) {
        auto v = P.take(key);
        if (!v) {
            if (dflt) return *dflt;
            usage("missing parameter '" + key + "'");
        }
        return parse_poly_value(F, *v);
    };
    auto lin = [&](const std::string& key, std::optional<LinPoly> dflt = std::nullopt) {
        auto v = P.take(key);
        if (!v) {
            if (dflt) return *dflt;
            usage("missing parameter '" + key + "'");
        }
        return parse_lin_value(F, *v);
    };
    auto integer = [&](const std::string& key) { return parse_uint(key, P.need(key)); };

    if (family == "shifted-frobenius" || family == "simple-proof") {
        Elem alpha = elem("alpha"), c = elem("c", F.one());
        Poly G = poly("G", Poly::x());
        P.finish();
        auto r = invert_shifted_frobenius(F, alpha, c, G);
        if (!r.permutation) {
            out << "family=shifted-frobenius permutation=false oracle_permutation="
                << (r.oracle_permutation ? "true" : "false") << "\n";
            return exit_false;
        }
        print_certificate(out, *r.certificate);
        return certificate_status(*r.certificate);
    }
    InverseCertificate cert;
    if (family == "quadratic-trace") {
        Elem a = elem("a"), b = elem("b"), c = elem("c", F.one());
        Poly G = poly("G");
        P.finish();
        cert = invert_quadratic_trace(F, a, b, c, G);
    } else if (family == "trace-translate") {
        LinPoly phi = lin("phi");
        Elem gamma = elem("gamma");
        Poly G = poly("G", Poly::x());
        P.finish();
        cert = invert_trace_translate(F, phi, gamma, G);
    } else if (family == "l1l2") {
        std::uint64_t s = integer("s"), k = integer("k");
        L1L2Params prm;
        if (P.has("delta")) {
            prm = frobenius_difference_params(F, static_cast<unsigned>(k), elem("delta"));
        } else {
            prm = {lin("L1"), lin("L2", lin_identity(F)), poly("G")};
        }
        P.finish();
        cert = invert_l1l2(F, prm.L1, prm.L2, prm.G, s, static_cast<unsigned>(k));
    } else if (family == "power-q") {
        Elem a = elem("a"), b = elem("b");
        std::uint64_t k = integer("k");
        P.finish();
        cert = invert_q2_powerQ(F, a, b, k);
    } else if (family == "agw") {
        AgwInstance inst;
        inst.g = poly("g");
        inst.h = poly("h", Poly::constant(F.one()));
        inst.phi = lin("phi");
        inst.psi = lin("psi");
        inst.psibar = lin("psibar", inst.psi);
        P.finish();
        cert = invert_agw_general(F, inst);
    } else if (family == "additive") {
        AdditivePreset preset = parse_preset(P.need("preset"));
        LinPoly phi = lin("phi");
        Poly h = poly("h", Poly::constant(F.one()));
        Poly G = poly("G");
        auto inst = additive_preset(F, preset, phi, h, G);
        if (preset == AdditivePreset::general || preset == AdditivePreset::constant_h) {
            inst.psi = lin("psi", inst.psi);
            inst.psibar = lin("psibar", inst.psi);
        }
        P.finish();
        cert = invert_additive_case(F, inst, preset);
    } else if (family == "multiterm" || family == "linear-trace") {
        MultitermInstance inst;
        if (family == "linear-trace") {
            LinPoly H = lin("H");
            Poly g = poly("g");
            inst = linear_trace_instance(F, H, g);
        } else {
            inst.psi = lin("psi");
            inst.g = poly("g", Poly{});
            for (int i = 1; P.has("L" + std::to_string(i)); ++i) {
                std::string idx = std::to_string(i);
                inst.terms.push_back({lin("L" + idx), elem("delta" + idx, F.zero()),
                                      poly("h" + idx, Poly::constant(F.one()))});
            }
            if (inst.terms.empty()) usage("missing parameter 'L1'");
        }
        P.finish();
        cert = MultitermInverse(F, inst).certificate();
    } else if (family == "bilinear") {
        Elem a = elem("a");
        Poly g = poly("g");
        P.finish();
        cert = invert_bilinear_general(F, a, g);
    } else {
        usage("unknown family '" + family + "'");
    }
    print_certificate(out, cert);
    return certificate_status(cert);
}

/// First token value of key=... in a line, if present.
std::optional<std::string> field_of(const std::string& line, const std::string& key) {
    std::istringstream words(line);
    std::string tok;
    while (words >> tok)
        if (starts_with(tok, key + "=")) return tok.substr(key.size() + 1);
    return std::nullopt;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct BenchCase {
    LinPoly phi;
    SubspaceBasis V, Vbar;
};

/// Random phi over F_q bijective on V = ker(K) for a random K over F_q.
BenchCase bench_case(const FieldTower& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<Code> pick(0, F.q() - 1);
    auto random_lin = [&] {
        std::vector<Elem> c(F.n());
        for (auto& e : c) e = Elem{pick(rng)};
        return lin_from_coeffs(F, Level::base, c);
    };
    for (;;) {
        SubspaceBasis V = kernel(F, random_lin());
        if (V.dim() == 0) continue;
        LinPoly phi = random_lin();
        SubspaceBasis W = image_of(F, phi, V);
        if (W.dim() != V.dim()) continue;
        return {phi, V, W};
    }
}

bool inverts_on(const FieldTower& F, const LinPoly& R, const LinPoly& phi, const SubspaceBasis& V) {
    for (Elem v : V.elements(F))
        if (lin_eval(F, R, lin_eval(F, phi, v)) != v) return false;
    return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Compositional inverses of permutation polynomials over finite fields", "ppinv"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for exhaustive loops")->check(CLI::PositiveNumber);

    std::string spec, poly_text, lin_text, inv_text, other_text, family, params_src, v_text, vbar_text, on_text;
    std::string strategy = "gauss";

    auto* field = app.add_subcommand("field", "Field tower queries")->require_subcommand(1);
    auto* field_info = field->add_subcommand("info", "Print the canonical tower");
    field_info->add_option("SPEC", spec)->required();

    auto* perm = app.add_subcommand("perm", "Permutation tests")->require_subcommand(1);
    auto* perm_check = perm->add_subcommand("check", "Exhaustive permutation test");
    perm_check->add_option("SPEC", spec)->required();
    perm_check->add_option("POLY", poly_text)->required();

    auto* invert = app.add_subcommand("invert", "Construct and certify inverses")->require_subcommand(1);
    auto* inv_brute = invert->add_subcommand("brute", "Inverse by table inversion");
    inv_brute->add_option("SPEC", spec)->required();
    inv_brute->add_option("POLY", poly_text)->required();
    auto* inv_dickson = invert->add_subcommand("dickson", "Full inverse of a linearized polynomial");
    inv_dickson->add_option("SPEC", spec)->required();
    inv_dickson->add_option("LINPOLY", lin_text)->required();
    auto* inv_sub = invert->add_subcommand("subspace", "Inverse restricted to a subspace");
    inv_sub->add_option("SPEC", spec)->required();
    inv_sub->add_option("LINPOLY", lin_text)->required();
    inv_sub->add_option("--V", v_text, "Domain span{...}")->required();
    inv_sub->add_option("--Vbar", vbar_text, "Image span{...}; defaults to the image of V");
    inv_sub->add_option("--strategy", strategy)->check(CLI::IsMember({"gauss", "ntt"}));
    auto* inv_family = invert->add_subcommand("family", "Closed-form inverse of a named family");
    inv_family->add_option("FAMILY", family)->required();
    inv_family->add_option("SPEC", spec)->required();
    inv_family->add_option("PARAMFILE", params_src, "key=value file, '-' for stdin, or params(k=v,...)")
        ->required();

    auto* lin = app.add_subcommand("lin", "Linearized polynomial tools")->require_subcommand(1);
    auto* lin_compose_cmd = lin->add_subcommand("compose", "L1 o L2");
    lin_compose_cmd->add_option("SPEC", spec)->required();
    lin_compose_cmd->add_option("L1", lin_text)->required();
    lin_compose_cmd->add_option("L2", other_text)->required();
    auto* lin_eval_cmd = lin->add_subcommand("eval", "L(x)");
    lin_eval_cmd->add_option("SPEC", spec)->required();
    lin_eval_cmd->add_option("LINPOLY", lin_text)->required();
    lin_eval_cmd->add_option("X", other_text)->required();
    auto* lin_dickson_cmd = lin->add_subcommand("dickson", "Dickson matrix and determinant");
    lin_dickson_cmd->add_option("SPEC", spec)->required();
    lin_dickson_cmd->add_option("LINPOLY", lin_text)->required();

    unsigned census_n = 0;
    std::uint64_t census_q = 0;
    bool enumerate = false;
    auto* census = app.add_subcommand("census", "Counting tools")->require_subcommand(1);
    auto* census_idem = census->add_subcommand("idempotents", "Count idempotent q-polynomials");
    census_idem->add_option("--n", census_n)->required()->check(CLI::PositiveNumber);
    census_idem->add_option("--q", census_q)->required()->check(CLI::PositiveNumber);
    census_idem->add_flag("--enumerate", enumerate, "List them (desk scale)");

    auto* verify = app.add_subcommand("verify", "Check that INVPOLY inverts POLY");
    verify->add_option("SPEC", spec)->required();
    verify->add_option("POLY", poly_text)->required();
    verify->add_option("INVPOLY", inv_text, "Literal, or '-' to read an invert line from stdin")->required();
    verify->add_option("--on", on_text, "Restrict to span{...}");

    bool sweep = false;
    std::vector<std::string> towers{"2:1:3", "2:1:5", "2:1:7", "3:1:2", "3:1:4", "2:2:3", "5:1:2", "5:1:3", "7:1:2"};
    unsigned reps = 5;
    std::uint64_t seed = 1;
    auto* bench = app.add_subcommand("bench", "Timing")->require_subcommand(1);
    auto* bench_sub = bench->add_subcommand("subspace-inverse", "Gauss vs transform solver, CSV");
    bench_sub->add_flag("--sweep", sweep, "Run the tower sweep")->required();
    bench_sub->add_option("--towers", towers, "Field specs")->delimiter(',');
    bench_sub->add_option("--reps", reps)->check(CLI::PositiveNumber);
    bench_sub->add_option("--seed", seed);

    // Name the offending token for unknown or missing subcommands.
    CLI::App* cur = &app;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (starts_with(a, "-")) {
            if (a == "--threads") ++i;
            if (a == "--help" || a == "-h") break;
            continue;
        }
        auto subs = cur->get_subcommands([](CLI::App*) { return true; });
        if (subs.empty()) break;
        auto it = std::find_if(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == a; });
        if (it == subs.end()) {
            err << "error: unknown command '" << a << "'\n";
            return exit_usage;
        }
        cur = *it;
    }
    if (cur != &app && !cur->get_subcommands([](CLI::App*) { return true; }).empty() &&
        std::find(args.begin(), args.end(), "--help") == args.end()) {
        err << "error: '" << cur->get_name() << "' needs a subcommand\n";
        return exit_usage;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (threads) set_worker_threads(threads);

    std::string current_family;
    try {
        auto tower = [&] { return parse_field_spec(spec); };

        if (field_info->parsed()) {
            auto F = tower();
            out << "spec=" << F.spec() << " p=" << F.p() << " m=" << F.m() << " n=" << F.n() << " q=" << F.q()
                << " size=" << F.size() << "\n";
            return exit_ok;
        }
        if (perm_check->parsed()) {
            auto F = tower();
            F.require_desk_scale("perm check");
            Poly f = parse_poly_value(F, poly_text);
            auto values = evaluate_all(F, f);
            std::vector<std::optional<Elem>> seen(F.size());
            for (Elem x : F.elements()) {
                auto& slot = seen[values[x.code].code];
                if (slot) {
                    out << "permutation=false collision=" << format_elem(*slot) << "," << format_elem(x) << "\n";
                    return exit_false;
                }
                slot = x;
            }
            out << "permutation=true\n";
            return exit_ok;
        }
        if (inv_brute->parsed()) {
            auto F = tower();
            Poly f = parse_poly_value(F, poly_text);
            if (!is_permutation(F, f)) {
                out << "family=brute permutation=false\n";
                return exit_false;
            }
            Poly g = brute_inverse(F, f);
            bool ok = functions_equal(F, compose_mod(F, g, f), Poly::x());
            out << "family=brute verified=" << bool_str(ok) << " inverse=" << format_poly(g) << "\n";
            return ok ? exit_ok : exit_false;
        }
        if (inv_dickson->parsed()) {
            auto F = tower();
            LinPoly L = parse_lin_value(F, lin_text);
            Elem det = lin_determinant(F, L);
            if (det.code == 0) {
                out << "family=dickson det=0 verified=false error=singular_dickson\n";
                return exit_false;
            }
            LinPoly R = lin_inverse_full(F, L);
            LinPoly id = lin_identity(F, L.level);
            bool ok = lin_compose(F, R, L) == id && lin_compose(F, L, R) == id;
            out << "family=dickson det=" << format_elem(det) << " verified=" << bool_str(ok)
                << " inverse=" << format_lin(R) << "\n";
            return ok ? exit_ok : exit_false;
        }
        if (inv_sub->parsed()) {
            auto F = tower();
            LinPoly phi = parse_lin_value(F, lin_text);
            SubspaceBasis V = parse_span(F, v_text);
            SubspaceBasis Vbar = vbar_text.empty() ? image_of(F, phi, V) : parse_span(F, vbar_text);
            LinPoly R;
            std::string used = strategy;
            if (strategy == "ntt") {
                auto c = circulant_subspace_inverse(F, phi, V, Vbar);
                R = c.inverse;
                used = std::string(strategy_name(c.used));
            } else {
                R = subspace_inverse(F, phi, V, Vbar);
            }
            bool ok = inverts_on(F, R, phi, V);
            out << "family=subspace strategy=" << used << " verified=" << bool_str(ok) << " inverse=" << format_lin(R)
                << " domain=" << format_span(F, V) << "\n";
            return ok ? exit_ok : exit_false;
        }
        if (inv_family->parsed()) {
            auto F = tower();
            F.require_desk_scale("invert family");
            Params P = load_params(params_src, in);
            if (auto tag = P.take("family"); tag && *tag != family)
                usage("parameter family '" + *tag + "' does not match '" + family + "'");
            if (auto fs = P.take("field"); fs && !parse_field_spec(*fs).same_as(F))
                usage("parameter field '" + *fs + "' does not match '" + spec + "'");
            current_family = family == "simple-proof" ? "shifted-frobenius" : family;
            return run_family(family, F, P, out);
        }
        if (lin_compose_cmd->parsed()) {
            auto F = tower();
            out << "lin=" << format_lin(lin_compose(F, parse_lin_value(F, lin_text), parse_lin_value(F, other_text)))
                << "\n";
            return exit_ok;
        }
        if (lin_eval_cmd->parsed()) {
            auto F = tower();
            out << "value=" << format_elem(lin_eval(F, parse_lin_value(F, lin_text), parse_elem(F, other_text)))
                << "\n";
            return exit_ok;
        }
        if (lin_dickson_cmd->parsed()) {
            auto F = tower();
            LinPoly L = parse_lin_value(F, lin_text);
            if (L.level != Level::base) usage("Dickson matrices need a q-polynomial");
            out << "matrix=" << format_matrix(dickson_matrix(F, L)) << " det=" << format_elem(lin_determinant(F, L))
                << "\n";
            return exit_ok;
        }
        if (census_idem->parsed()) {
            out << "count=" << count_idempotents(census_n, census_q).str() << "\n";
            if (enumerate) {
                auto F = default_tower(census_q, census_n);
                for (const auto& L : enumerate_idempotents(F)) out << "idempotent=" << format_lin(L) << "\n";
            }
            return exit_ok;
        }
        if (verify->parsed()) {
            auto F = tower();
            F.require_desk_scale("verify");
            if (inv_text == "-") {
                std::string line, found;
                while (std::getline(in, line)) {
                    if (auto v = field_of(line, "inverse")) {
                        found = *v;
                        if (on_text.empty())
                            if (auto d = field_of(line, "domain")) on_text = *d;
                        break;
                    }
                }
                if (found.empty()) usage("no inverse= token on stdin");
                inv_text = found;
            }
            Poly f = parse_poly_value(F, poly_text);
            Poly g = parse_poly_value(F, inv_text);
            std::vector<Elem> domain = on_text.empty() ? F.elements() : parse_span(F, on_text).elements(F);
            for (Elem x : domain) {
                if (eval(F, g, eval(F, f, x)) != x) {
                    out << "verified=false counterexample=" << format_elem(x) << "\n";
                    return exit_false;
                }
            }
            if (on_text.empty()) {
                for (Elem x : domain) {
                    if (eval(F, f, eval(F, g, x)) != x) {
                        out << "verified=false counterexample=" << format_elem(x) << "\n";
                        return exit_false;
                    }
                }
            }
            out << "verified=true\n";
            return exit_ok;
        }
        if (bench_sub->parsed() && sweep) {
            out << "p,m,n,strategy,nanos,verified\n";
            for (const auto& s : towers) {
                auto F = parse_field_spec(s);
                std::mt19937_64 rng(seed);
                auto bc = bench_case(F, rng);
                for (std::string which : {"gauss", "ntt"}) {
                    LinPoly R;
                    std::string used = which;
                    std::int64_t total = 0;
                    bool available = true;
                    for (unsigned r = 0; r < reps && available; ++r) {
                        auto t0 = std::chrono::steady_clock::now();
                        if (which == "gauss") {
                            R = subspace_inverse(F, bc.phi, bc.V, bc.Vbar);
                        } else {
                            try {
                                auto c = circulant_subspace_inverse(F, bc.phi, bc.V, bc.Vbar);
                                R = c.inverse;
                                used = std::string(strategy_name(c.used));
                            } catch (const Error& e) {
                                if (e.code() != Errc::no_suitable_root) throw;
                                available = false;
                            }
                        }
                        total += std::chrono::duration_cast<std::chrono::nanoseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
                    }
                    if (!available) continue;
                    out << F.p() << "," << F.m() << "," << F.n() << "," << used << "," << total / reps << ","
                        << bool_str(inverts_on(F, R, bc.phi, bc.V)) << "\n";
                }
            }
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        if (!checked_false(e.code())) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }
        if (!current_family.empty()) out << "family=" << current_family << " ";
        out << "verified=false error=" << errc_name(e.code());
        if (e.witness()) out << " witness=" << *e.witness();
        out << "\n";
        err << e.what() << "\n";
        return exit_false;
    }
    err << "error: nothing to do\n";
    return exit_usage;
}

}  // namespace ppinv::cli
