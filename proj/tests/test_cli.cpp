#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <sstream>

#include <cutjoin/cli.hpp>

using namespace cutjoin;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("single value lookup prints an exact fraction", "[cli]") {
    RunResult r = run_cli({"psi", "--g", "1", "--b", "1"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "1/24\n");
    RunResult j = run_cli({"psi", "--g", "2", "--b", "2,3", "--format", "json"});
    REQUIRE(j.code == 0);
    auto parsed = ordered_json::parse(j.out);
    REQUIRE(parsed["key"] == "2:2,3");
    REQUIRE(parsed["value"] == "29/5760");
}

TEST_CASE("verification output is byte-stable and exits zero", "[cli]") {
    RunResult a = run_cli({"verify", "--g", "1", "--m", "2", "--format", "json"});
    RunResult b = run_cli({"verify", "--g", "1", "--m", "2", "--format", "json"});
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
    auto parsed = ordered_json::parse(a.out);
    REQUIRE(parsed["status"] == "zero");
    REQUIRE(parsed["mode"] == "stable");
}

TEST_CASE("series command emits polynomial coefficient strings", "[cli]") {
    RunResult r = run_cli({"omega", "--order", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    auto parsed = ordered_json::parse(r.out);
    REQUIRE(parsed["coefficients"][1]["coefficient"] == "1");
    REQUIRE(parsed["coefficients"][2]["coefficient"] == "tau");
    REQUIRE(parsed["coefficients"][3]["coefficient"] == "3/2*tau^2 + 1/2*tau");
    REQUIRE(r.out.find('.') == std::string::npos);  // no float literals anywhere
}

TEST_CASE("generating polynomial renders in all three formats", "[cli]") {
    RunResult text = run_cli({"cmg", "--g", "0", "--m", "3"});
    REQUIRE(text.code == 0);
    REQUIRE(text.out.find("y1*y2*y3") != std::string::npos);
    RunResult latex = run_cli({"cmg", "--g", "0", "--m", "3", "--format", "latex"});
    REQUIRE(latex.out.find("\\tau^{2}") != std::string::npos);
    REQUIRE(latex.out.find("y_{1}y_{2}y_{3}") != std::string::npos);
    RunResult json = run_cli({"cmg", "--g", "0", "--m", "3", "--format", "json"});
    PolynomialDocument doc = parse_document(json.out);
    CorrelatorProvider provider;
    REQUIRE(polynomial_from_document(doc) == cmg_polynomial(0, 3, provider).numeric());
}

TEST_CASE("exit codes separate input errors from failures", "[cli]") {
    REQUIRE(run_cli({"nonsense"}).code == 2);
    REQUIRE(run_cli({"psi", "--g", "1"}).code == 2);              // missing --b
    REQUIRE(run_cli({"psi", "--g", "0", "--b", "0,0"}).code == 2);  // unstable
    REQUIRE(run_cli({"verify", "--g", "0", "--m", "3"}).code == 2);
    REQUIRE(run_cli({"verify", "--g", "1", "--m", "2", "--mode", "bogus"}).code == 2);
    REQUIRE(run_cli({"--help"}).code == 0);
    REQUIRE(run_cli({}).code == 2);
    RunResult hint = run_cli({"verify", "--g", "0", "--m", "3"});
    REQUIRE(hint.err.find("closed-form") != std::string::npos);
}

TEST_CASE("closed-form chain is reachable from the command line", "[cli]") {
    RunResult r = run_cli({"verify", "--g", "0", "--m", "3", "--mode", "closed-form"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("status: zero") != std::string::npos);
}

TEST_CASE("a wrong pinned value drives the exit code to one", "[cli]") {
    std::string path = "cli_poison_" + std::to_string(::getpid()) + ".json";
    {
        CacheFile c;
        c.entries.push_back({1, {1}, {}, "1", "23"});
        save_cache(path, c);
    }
    RunResult r = run_cli({"verify", "--g", "1", "--m", "2", "--cache", path, "--format", "json"});
    std::remove(path.c_str());
    REQUIRE(r.code == 1);
    auto parsed = ordered_json::parse(r.out);
    REQUIRE(parsed["status"] == "nonzero");
    REQUIRE(parsed.contains("residual"));
}

TEST_CASE("cache files populate and persist across commands", "[cli]") {
    std::string path = "cli_cache_" + std::to_string(::getpid()) + ".json";
    RunResult r = run_cli({"psi", "--g", "1", "--b", "0,0,3", "--cache", path});
    REQUIRE(r.code == 0);
    CacheFile c = load_cache(path);
    REQUIRE_FALSE(c.entries.empty());
    auto values = values_from_cache(c);
    REQUIRE(values.at(CorrelatorKey(1, {0, 0, 3})) == Rational(1, 24));
    std::remove(path.c_str());
}

TEST_CASE("table enumerates every admissible exponent list", "[cli]") {
    RunResult r = run_cli({"table", "--g", "0", "--max-n", "5"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("0:0,0,0 = 1\n") != std::string::npos);
    REQUIRE(r.out.find("0:0,0,0,0,2 = 1\n") != std::string::npos);
    REQUIRE(r.out.find("0:0,0,0,1,1 = 2\n") != std::string::npos);
    RunResult one = run_cli({"table", "--g", "1", "--max-n", "1", "--format", "json"});
    auto parsed = ordered_json::parse(one.out);
    REQUIRE(parsed["entries"].size() == 1);
    REQUIRE(parsed["entries"][0]["key"] == "1:1");
    REQUIRE(parsed["entries"][0]["value"] == "1/24");
}

TEST_CASE("basis command agrees between series and closed form", "[cli]") {
    RunResult poly = run_cli({"phi", "--i", "2", "--form", "poly", "--format", "json"});
    REQUIRE(poly.code == 0);
    auto parsed = ordered_json::parse(poly.out);
    REQUIRE(parsed["degree"] == 5);
    RunResult series = run_cli({"phi", "--i", "2", "--form", "series", "--order", "6"});
    REQUIRE(series.code == 0);
    REQUIRE(series.out.find("x^2: 8*tau + 4\n") != std::string::npos);
}

TEST_CASE("extraction command reports the solved values", "[cli]") {
    RunResult r = run_cli({"extract", "--g", "1", "--m", "2", "--unknowns", "1:0:1;1:0,1:1",
                           "--format", "json"});
    REQUIRE(r.code == 0);
    auto parsed = ordered_json::parse(r.out);
    REQUIRE(parsed["consistent"] == true);
    REQUIRE(parsed["unique"] == true);
    REQUIRE(parsed["values"][0]["value"] == "1/24");
    REQUIRE(parsed["values"][1]["value"] == "1/24");
}

TEST_CASE("top-degree command exits zero on the checked range", "[cli]") {
    RunResult r = run_cli({"dvv", "--g", "1", "--m", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto parsed = ordered_json::parse(r.out);
    REQUIRE(parsed["status"] == "zero");
    REQUIRE_FALSE(parsed["values_used"].empty());
}
