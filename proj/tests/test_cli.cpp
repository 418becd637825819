#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "gint/classifier.hpp"
#include "gint/error.hpp"
#include "gint/group.hpp"
#include "gint/spec_parser.hpp"

using namespace gint;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    json doc;
};

// run the real binary (path in GINT_CLI) and parse its report from stdout
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("GINT_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "GINT_CLI must point at the gint binary");
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    RunResult r;
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!out.empty()) r.doc = json::parse(out);
    return r;
}

bool contains_close(const json& arr, double x, double tol = 1e-6) {
    for (const auto& v : arr)
        if (std::abs(v.get<double>() - x) <= tol) return true;
    return false;
}

}  // namespace

TEST_CASE("spec grammar round-trips every catalog name") {
    for (const CatalogEntry& e : catalog()) {
        CAPTURE(e.name);
        const GroupSpec s = parse_spec(e.name);
        CHECK(parse_spec(print_spec(s)) == s);
    }
    CHECK(print_spec(parse_spec("Q8 x E(4)")) == "Q8 x E(4)");
    CHECK(print_spec(parse_spec("  Dic( E(9)   x C(6) )")) == "Dic(E(9) x C(6))");
    CHECK(print_spec(parse_spec("D(8)")) == "D(8)");

    const auto& names = spec_atom_names();
    CHECK(names.size() == 11);
    CHECK(std::find(names.begin(), names.end(), "Q8") != names.end());
    CHECK(std::find(names.begin(), names.end(), "Dic12") != names.end());
    CHECK(std::find(names.begin(), names.end(), "D6") == names.end());
}

TEST_CASE("spec syntax errors carry position and hints") {
    CHECK_THROWS_AS(parse_spec(""), SyntaxError);
    CHECK_THROWS_AS(parse_spec("D("), SyntaxError);
    CHECK_THROWS_AS(parse_spec("C(x)"), SyntaxError);
    CHECK_THROWS_AS(parse_spec("Foo"), SyntaxError);
    CHECK_THROWS_AS(parse_spec("Q8 x"), SyntaxError);
    CHECK_THROWS_AS(parse_spec("Q8)"), SyntaxError);
    CHECK_THROWS_AS(parse_spec("Q8 C(4)"), SyntaxError);

    try {
        parse_spec("D6");
        FAIL("D6 must not parse");
    } catch (const SyntaxError& e) {
        CHECK(e.col == 1);
        CHECK(e.expected == "D(6)");  // the shorthand slip gets a concrete fix
    }
    try {
        parse_spec("Q8)");
        FAIL("trailing input must not parse");
    } catch (const SyntaxError& e) {
        CHECK(e.col == 3);
    }
}

TEST_CASE("constructor arguments are validated at build time") {
    CHECK_THROWS_AS(build_spec("D(7)"), InvalidArgument);
    CHECK_THROWS_AS(build_spec("E(6)"), InvalidArgument);
    CHECK_THROWS_AS(build_spec("C(0)"), InvalidArgument);
    CHECK_THROWS_AS(build_spec("Dic(Q8)"), NotAbelian);
    CHECK_THROWS_AS(build_spec("Dic(E(4))"), NoUniqueInvolution);

    CHECK(build_spec("Dic(E(9) x C(6))").n == 108);
    CHECK(build_spec("C(2) x C(2)").n == 4);

    // every catalog name builds to its recorded fingerprint
    for (const CatalogEntry& e : catalog()) {
        CAPTURE(e.name);
        CHECK(fingerprint(build_spec(e.name)) == e.golden);
    }
}

TEST_CASE("cli: membership verdicts with reports") {
    RunResult r = run_cli("gk \"Dic(E(3) x C(6))\" --k 5");
    CHECK(r.exit_code == 0);
    CHECK(r.doc["schema"] == "gint-report/1");
    CHECK(r.doc["group"]["order"] == 36);
    CHECK(r.doc["result"]["decision"] == "member");
    CHECK(r.doc["result"]["setsExamined"] == 307);

    // same verdict with a worker pool
    RunResult rj = run_cli("gk \"Dic(E(3) x C(6))\" --k 5 --jobs 2");
    CHECK(rj.exit_code == 0);
    CHECK(rj.doc["result"]["setsExamined"] == 307);

    RunResult d8 = run_cli("gk \"D(8)\" --k 2");
    CHECK(d8.exit_code == 1);
    CHECK(d8.doc["result"]["decision"] == "nonmember");
    CHECK(d8.doc["result"]["setsExamined"] == 11);
    CHECK(d8.doc["result"]["witness"]["degree"] == 2);
    CHECK(std::abs(std::abs(d8.doc["result"]["evidence"]["eigenvalue"].get<double>()) -
                   std::sqrt(2.0)) < 1e-6);
    CHECK(d8.doc["result"]["evidence"]["exactFailure"] == true);
}

TEST_CASE("cli: spectrum reports") {
    RunResult bad = run_cli("spectrum \"D(8)\" --set \"ab,b\"");
    CHECK(bad.exit_code == 1);
    CHECK(bad.doc["result"]["integral"] == false);
    CHECK(contains_close(bad.doc["result"]["floatSpectrum"], std::sqrt(2.0)));
    CHECK(contains_close(bad.doc["result"]["floatSpectrum"], -std::sqrt(2.0)));

    RunResult good = run_cli("spectrum \"C(6)\" --set \"u,u^-1\"");
    CHECK(good.exit_code == 0);
    CHECK(good.doc["result"]["integral"] == true);
    CHECK(!good.doc["result"]["integerEigenvalues"].empty());
}

TEST_CASE("cli: info and symbol") {
    RunResult info = run_cli("info \"Q8 x E(4)\"");
    CHECK(info.exit_code == 0);
    CHECK(info.doc["group"]["order"] == 32);
    CHECK(info.doc["result"]["atoms"] == 19);

    RunResult sym = run_cli(
        "symbol \"Q8sZ3\" --subgroup \"-1, s\" --pin \"1, i, j, k\" --set \"i, -i, s, s^-1\"");
    CHECK(sym.exit_code == 1);
    CHECK(sym.doc["result"]["cosets"] == 4);
    CHECK(sym.doc["result"]["transversal"] == json::array({"1", "i", "j", "k"}));
    CHECK(sym.doc["result"]["integral"] == false);
    CHECK(contains_close(sym.doc["result"]["spectrum"], 4.0));
    CHECK(contains_close(sym.doc["result"]["spectrum"], -3.0));
    CHECK(contains_close(sym.doc["result"]["spectrum"], (1.0 + std::sqrt(17.0)) / 2.0));
}

TEST_CASE("cli: usage and error exits") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("--help >/dev/null").exit_code == 0);
    CHECK(run_cli("verify bogus").exit_code == 2);

    RunResult missing = run_cli("gk \"D(8)\"");
    CHECK(missing.exit_code == 2);
    CHECK(missing.doc["command"] == "gk");
    CHECK(missing.doc["error"]["type"] == "UsageError");

    RunResult label = run_cli("spectrum \"C(6)\" --set \"zz\"");
    CHECK(label.exit_code == 2);
    CHECK(label.doc["error"]["type"] == "UnknownLabel");
    const auto& sugg = label.doc["error"]["suggestions"];
    CHECK(std::find(sugg.begin(), sugg.end(), json("u")) != sugg.end());

    RunResult slip = run_cli("info \"D6\"");
    CHECK(slip.exit_code == 2);
    CHECK(slip.doc["error"]["type"] == "SyntaxError");
    CHECK(slip.doc["error"]["expected"] == "D(6)");

    RunResult odd = run_cli("info \"D(7)\"");
    CHECK(odd.exit_code == 2);
    CHECK(odd.doc["error"]["type"] == "InvalidArgument");
}

TEST_CASE("cli: witness verification suite") {
    RunResult r = run_cli("verify witnesses");
    CHECK(r.exit_code == 0);
    CHECK(r.doc["result"]["passed"] == true);
    CHECK(r.doc["result"]["checks"].size() == 8);
    for (const auto& c : r.doc["result"]["checks"]) CHECK(c["passed"] == true);
}
