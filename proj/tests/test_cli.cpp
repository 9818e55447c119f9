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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ppinv/literals.hpp"
#include "ppinv/parallel.hpp"

using namespace ppinv;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::ostringstream out, err;
    std::istringstream in(input);
    int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("golden lines") {
    auto r = run({"census", "idempotents", "--n", "2", "--q", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "count=14\n");
    CHECK(run({"census", "idempotents", "--n", "2", "--q", "5"}).out == "count=32\n");

    r = run({"perm", "check", "2:1:3", "poly:[0,1,1]"});
    CHECK(r.code == 1);
    CHECK(r.out.find("permutation=false") == 0);
    CHECK(run({"perm", "check", "2:1:3", "x^4"}).out == "permutation=true\n");

    r = run({"invert", "family", "simple-proof", "2:1:3", "params(\xCE\xB1=1,c=1,G=x)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verified=true inverse=poly:[0,0,1]") != std::string::npos);

    r = run({"lin", "dickson", "2:1:3", "lin:[0,1,1]"});
    CHECK(r.out == "matrix=0,1,1;1,0,1;1,1,0 det=0\n");
    CHECK(run({"lin", "eval", "2:1:3", "T", "1"}).out == "value=1\n");
    CHECK(run({"lin", "compose", "2:1:3", "T", "Q"}).out == "lin=lin:[0,0,0]\n");
    CHECK(run({"field", "info", "2:1:3"}).out == "spec=2:1:3:modq=0,1:modqn=1,1,0,1 p=2 m=1 n=3 q=2 size=8\n");
}

TEST_CASE("every invert line re-verifies") {
    struct Case {
        std::vector<std::string> invert;
        std::string spec, f;
    };
    std::vector<Case> cases{
        {{"invert", "brute", "2:1:4", "x^7"}, "2:1:4", "x^7"},
        {{"invert", "dickson", "3:1:2", "lin:[0,1]"}, "3:1:2", "lin:[0,1]"},
        {{"invert", "subspace", "2:1:3", "lin:[0,1,0]", "--V", "span{6,2}"}, "2:1:3", "lin:[0,1,0]"},
        {{"invert", "subspace", "3:1:4", "lin:[1,1,0,0]", "--V", "span{1,3}", "--strategy", "ntt"},
         "3:1:4",
         "lin:[1,1,0,0]"},
        {{"invert", "family", "power-q", "3:1:2", "params(a=1,b=0,k=2)"}, "3:1:2", "x^2+x^3+x^4+x^6"},
        {{"invert", "family", "l1l2", "2:1:4", "params(k=2,delta=2,s=5)"}, "2:1:4", ""},
    };
    for (const auto& c : cases) {
        INFO(c.invert[1]);
        auto r = run(c.invert);
        REQUIRE(r.code == 0);
        std::string f = c.f;
        if (f.empty()) {
            // x + (x^4 + x + 2)^5 over F_16, rebuilt by the brute-force path
            std::string inv = lines(r.out)[0].substr(r.out.find("inverse=") + 8);
            auto brute = run({"invert", "brute", c.spec, inv});
            REQUIRE(brute.code == 0);
            f = lines(brute.out)[0].substr(brute.out.find("inverse=") + 8);
        }
        auto v = run({"verify", c.spec, f, "-"}, r.out);
        CHECK(v.code == 0);
        CHECK(v.out == "verified=true\n");
    }
}

TEST_CASE("verify reports counterexamples") {
    auto r = run({"verify", "2:1:3", "x^4", "x^4"});
    CHECK(r.code == 1);
    CHECK(r.out.find("verified=false counterexample=") == 0);
    // the subspace inverse is not a full inverse
    auto sub = run({"invert", "subspace", "2:1:3", "lin:[1,1,0]", "--V", "span{1}", "--Vbar", "span{0}"});
    CHECK(sub.code != 0);
}

TEST_CASE("usage errors name the token") {
    auto r = run({"frob"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'frob'") != std::string::npos);
    r = run({"perm", "check", "4:1:2", "x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("4") != std::string::npos);
    r = run({"perm", "check", "2:1:3", "poly:[0,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("poly:[0,1") != std::string::npos);
    r = run({"perm", "check", "2:1:3", "x", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--bogus") != std::string::npos);
    r = run({"invert", "family", "nope", "2:1:3", "params(a=1)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'nope'") != std::string::npos);
    r = run({"invert", "family", "bilinear", "2:1:3", "params(a=1,g=x,zz=3)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'zz'") != std::string::npos);
    r = run({"invert", "family", "bilinear", "2:1:3", "params(g=x)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'a'") != std::string::npos);
    r = run({"invert", "subspace", "2:1:3", "x", "--V", "span{1}", "--strategy", "fft"});
    CHECK(r.code == 2);
    CHECK(r.err.find("fft") != std::string::npos);
    CHECK(run({"field"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("checked-false results exit 1 with a witness") {
    auto r = run({"invert", "family", "bilinear", "2:1:3", "params(a=1,g=x)"});
    CHECK(r.code == 1);
    CHECK(r.out.find("family=bilinear verified=false error=hypothesis_violated witness=") == 0);
    r = run({"invert", "family", "shifted-frobenius", "2:1:2", "params(alpha=1)"});
    CHECK(r.code == 1);
    CHECK(r.out == "family=shifted-frobenius permutation=false oracle_permutation=false\n");
    r = run({"invert", "family", "linear-trace", "2:1:3", "params(H=lin:[0,1,0],g=1)"});
    CHECK(r.code == 1);
    CHECK(r.out.find("error=not_permutation") != std::string::npos);
    CHECK(run({"invert", "brute", "2:1:3", "x^3+x"}).code == 1);
    CHECK(run({"invert", "dickson", "2:1:3", "T"}).code == 1);
    CHECK(run({"invert", "family", "l1l2", "2:1:4", "params(k=2,delta=1,s=3)"}).out.find("error=bad_exponent") !=
          std::string::npos);
}

TEST_CASE("parameter files") {
    auto dir = std::filesystem::temp_directory_path() / "ppinv_cli_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "prop1.params").string();
    {
        std::ofstream f(path);
        f << "# quadratic trace instance\nfamily=quadratic-trace\nfield=3:1:2\na=1 b=0\nc=1\nG=x\n";
    }
    auto r = run({"invert", "family", "quadratic-trace", "3:1:2", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("family=quadratic-trace") == 0);
    CHECK(r.out.find("verified=true") != std::string::npos);
    CHECK(run({"invert", "family", "bilinear", "3:1:2", path}).code == 2);
    CHECK(run({"invert", "family", "quadratic-trace", "5:1:2", path}).code == 2);
    r = run({"invert", "family", "trace-translate", "3:1:2", "-"}, "phi=lin:[0,1]\ngamma=2\n");
    CHECK(r.code == 0);
    CHECK(run({"invert", "family", "agw", "3:1:2", "missing.params"}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("output does not depend on the thread count") {
    std::vector<std::vector<std::string>> cmds{
        {"invert", "family", "bilinear", "3:1:3", "params(a=1,g=2*x)"},
        {"invert", "brute", "2:1:6", "x^5"},
        {"census", "idempotents", "--n", "2", "--q", "2", "--enumerate"},
        {"invert", "family", "multiterm", "2:1:4", "params(psi=T,L1=x,h1=1,g=x)"},
    };
    for (const auto& c : cmds) {
        auto a = c, b = c;
        a.insert(a.begin(), {"--threads", "1"});
        b.insert(b.begin(), {"--threads", "4"});
        auto ra = run(a), rb = run(b);
        CHECK(ra.code == rb.code);
        CHECK(ra.out == rb.out);
        CHECK(ra.out == run(c).out);
    }
    set_worker_threads(0);
}

TEST_CASE("census enumeration and bench CSV") {
    auto r = run({"census", "idempotents", "--n", "2", "--q", "2", "--enumerate"});
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == "count=8");
    auto F = FieldTower::build(2, 1, 2);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto L = parse_lin(F, ls[i].substr(ls[i].find('=') + 1));
        for (Elem x : F.elements()) CHECK(lin_eval(F, L, lin_eval(F, L, x)) == lin_eval(F, L, x));
    }

    r = run({"bench", "subspace-inverse", "--sweep", "--towers", "2:1:3,3:1:2,2:1:4", "--reps", "2"});
    CHECK(r.code == 0);
    ls = lines(r.out);
    REQUIRE(!ls.empty());
    CHECK(ls[0] == "p,m,n,strategy,nanos,verified");
    // 2:1:4 has no transform root, so only its gauss row appears
    CHECK(ls.size() == 1 + 2 + 2 + 1);
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].ends_with(",true"));
    CHECK(run({"bench", "subspace-inverse"}).code == 2);
}
