#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <random>

#include <cutjoin/cmg.hpp>
#include <cutjoin/io.hpp>

using namespace cutjoin;

namespace {

std::string temp_path(const char* tag) {
    return std::string("io_test_") + tag + "_" + std::to_string(::getpid()) + ".json";
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("tau-polynomial strings are canonical and invertible", "[io]") {
    QPoly p({Rational(1), Rational(-1), Rational(2)});
    REQUIRE(format_qpoly(p) == "2*tau^2 - tau + 1");
    REQUIRE(parse_qpoly("2*tau^2 - tau + 1") == p);
    REQUIRE(format_qpoly(QPoly::zero()) == "0");
    REQUIRE(parse_qpoly("0") == QPoly::zero());
    REQUIRE(format_qpoly(QPoly::tau()) == "tau");
    REQUIRE(parse_qpoly("tau") == QPoly::tau());
    REQUIRE(parse_qpoly("-tau^3 + 1/2") == QPoly({Rational(1, 2), Rational(0), Rational(0), Rational(-1)}));

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Rational> c(6);
        for (auto& x : c) x = Rational(num(rng), den(rng));
        QPoly q(c);
        REQUIRE(parse_qpoly(format_qpoly(q)) == q);
    }
}

TEST_CASE("malformed polynomial strings report a position", "[io]") {
    for (const char* bad : {"", "tau^", "1//2", "x + 1", "tau +", "+ tau", "2**tau"}) {
        try {
            parse_qpoly(bad);
            FAIL("accepted malformed input");
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find("position") != std::string::npos);
        }
    }
}

TEST_CASE("ratio strings round-trip through both branches", "[io]") {
    TauFun plain = TauFun(QPoly({Rational(1, 3), Rational(2)}));
    REQUIRE(parse_taufun(format_taufun(plain)) == plain);
    TauFun ratio = TauFun(QPoly::tau() * QPoly::tau(), QPoly::tau() + QPoly::one());
    std::string s = format_taufun(ratio);
    REQUIRE(s == "(tau^2)/(tau + 1)");
    REQUIRE(parse_taufun(s) == ratio);
}

TEST_CASE("documents round-trip a generating polynomial exactly", "[io]") {
    CorrelatorProvider provider;
    YPolynomial p = cmg_polynomial(1, 2, provider).numeric();
    PolynomialDocument doc = document_from_polynomial(p, 1, 2);
    REQUIRE(doc.degree == p.total_degree());
    // graded lexicographic ascending term order
    for (size_t i = 1; i < doc.terms.size(); ++i)
        REQUIRE(detail::graded_lex_less(doc.terms[i - 1].exponents, doc.terms[i].exponents));

    std::string text = render_document(doc);
    PolynomialDocument back = parse_document(text);
    REQUIRE(back == doc);
    REQUIRE(polynomial_from_document(back) == p);
    // rendering is stable byte for byte
    REQUIRE(render_document(back) == text);
}

TEST_CASE("document parsing rejects structural damage", "[io]") {
    REQUIRE_THROWS_AS(parse_document("not json"), ParseError);
    REQUIRE_THROWS_AS(parse_document("{\"variables\":[\"y1\"]}"), ParseError);
    REQUIRE_THROWS_AS(
        parse_document("{\"variables\":[\"y1\"],\"terms\":[{\"exponents\":[1,2],\"num\":\"1\","
                       "\"den\":\"1\"}],\"metadata\":{\"g\":0,\"m\":1,\"degree\":1,"
                       "\"generator\":\"x\"}}"),
        ParseError);
}

TEST_CASE("cache files round-trip fifty values", "[io]") {
    CorrelatorProvider provider;
    std::function<void(int, int, int)> warm = [&](int g, int n, int dim) {
        std::vector<int> b(static_cast<size_t>(n));
        std::function<void(int, int, int)> rec = [&](int idx, int left, int low) {
            if (idx == n) {
                if (left == 0) provider.psi(g, b);
                return;
            }
            for (int v = low; v <= left; ++v) {
                b[static_cast<size_t>(idx)] = v;
                rec(idx + 1, left - v, v);
            }
        };
        rec(0, dim, 0);
    };
    for (int n = 3; n <= 8; ++n) warm(0, n, n - 3);
    for (int n = 1; n <= 6; ++n) warm(1, n, n);
    for (int n = 1; n <= 3; ++n) warm(2, n, n + 3);
    auto values = provider.known();
    REQUIRE(values.size() >= 50);

    FileGuard guard{temp_path("cache")};
    save_cache(guard.path, cache_from_values(values));
    CacheFile loaded = load_cache(guard.path);
    REQUIRE(loaded.version == kCacheVersion);
    REQUIRE(values_from_cache(loaded) == values);
}

TEST_CASE("a cache with a different version is discarded", "[io]") {
    FileGuard guard{temp_path("stale")};
    CacheFile c;
    c.version = kCacheVersion + 1;
    c.entries.push_back({1, {1}, {}, "1", "24"});
    {
        std::ofstream out(guard.path);
        out << render_cache(c);
    }
    CacheFile loaded = load_cache(guard.path);
    REQUIRE(loaded.entries.empty());
    REQUIRE(loaded.version == kCacheVersion);
}

TEST_CASE("missing and corrupt cache files load as empty", "[io]") {
    REQUIRE(load_cache("definitely_not_here.json").entries.empty());
    FileGuard guard{temp_path("corrupt")};
    {
        std::ofstream out(guard.path);
        out << "{{{";
    }
    REQUIRE(load_cache(guard.path).entries.empty());
}

TEST_CASE("saving leaves no temporary behind", "[io]") {
    FileGuard guard{temp_path("atomic")};
    CacheFile c;
    c.entries.push_back({0, {0, 0, 0}, {}, "1", "1"});
    save_cache(guard.path, c);
    std::ifstream tmp(guard.path + ".tmp");
    REQUIRE_FALSE(tmp.good());
    REQUIRE(load_cache(guard.path) == c);
}

TEST_CASE("correlator keys parse back from their string form", "[io]") {
    for (const char* s : {"1:1", "0:0,0,0", "1:0,1:1", "2:2,3"}) {
        CorrelatorKey k = parse_correlator_key(s);
        REQUIRE(k.to_string() == s);
    }
    std::vector<CorrelatorKey> keys = parse_correlator_keys("1:0:1;1:0,1:1");
    REQUIRE(keys.size() == 2);
    REQUIRE(keys[1] == CorrelatorKey(1, {0, 1}, {1}));
    REQUIRE_THROWS_AS(parse_correlator_key("nope"), ParseError);
    REQUIRE_THROWS_AS(parse_correlator_key("1:"), ParseError);
    REQUIRE_THROWS_AS(parse_correlator_key("1:a,b"), ParseError);
}
