#include <catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include <cutjoin/cmg.hpp>
#include <cutjoin/leading.hpp>

using namespace cutjoin;

namespace {

YPolynomial three_point_closed() {
    // -tau^2/(tau+1) (y1 - 1)(y2 - 1)(y3 - 1)
    TauFun t = TauFun::tau();
    TauFun c = -(t * t) / (t + TauFun::one());
    YPolynomial p = YPolynomial::zero(3);
    for (int e1 = 0; e1 <= 1; ++e1)
        for (int e2 = 0; e2 <= 1; ++e2)
            for (int e3 = 0; e3 <= 1; ++e3) {
                int ones = e1 + e2 + e3;
                TauFun sign = (3 - ones) % 2 ? -TauFun::one() : TauFun::one();
                p.add_term({e1, e2, e3}, c * sign);
            }
    return p;
}

}  // namespace

TEST_CASE("three-point polynomial equals its product form", "[cmg]") {
    CorrelatorProvider provider;
    CmgPolynomial c = cmg_polynomial(0, 3, provider);
    REQUIRE(c.numeric() == three_point_closed());
    REQUIRE_FALSE(c.gamma_partial);
}

TEST_CASE("generating polynomials are symmetric and graded", "[cmg]") {
    CorrelatorProvider provider;
    std::vector<std::pair<int, int>> cases = {{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {1, 3}};
    for (auto [g, m] : cases) {
        YPolynomial p = cmg_polynomial(g, m, provider).numeric();
        REQUIRE(p.total_degree() == 6 * g - 6 + 3 * m);
        if (m >= 2) {
            std::vector<int> swap01(static_cast<size_t>(m));
            std::iota(swap01.begin(), swap01.end(), 0);
            std::swap(swap01[0], swap01[1]);
            REQUIRE(p.permuted(swap01) == p);
        }
        if (m >= 3) {
            std::vector<int> cycle(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) cycle[static_cast<size_t>(i)] = (i + 1) % m;
            REQUIRE(p.permuted(cycle) == p);
        }
    }
}

TEST_CASE("top-degree part keeps only odd powers per variable", "[cmg]") {
    CorrelatorProvider provider;
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}}) {
        CmgPolynomial c = cmg_polynomial(g, m, provider);
        YPolynomial top = leading_part(c);
        REQUIRE_FALSE(top.terms().empty());
        for (const auto& [e, coeff] : top.terms()) {
            int total = std::accumulate(e.begin(), e.end(), 0);
            REQUIRE(total == 6 * g - 6 + 3 * m);
            for (int x : e) REQUIRE(x % 2 == 1);
        }
    }
}

TEST_CASE("unstable indices are refused", "[cmg]") {
    CorrelatorProvider provider;
    REQUIRE_THROWS_AS(cmg_polynomial(0, 2, provider), Unstable);
    REQUIRE_THROWS_AS(cmg_polynomial(0, 1, provider), Unstable);
    REQUIRE_THROWS_AS(cmg_polynomial(1, 0, provider), Unstable);
}

TEST_CASE("multivariate division helpers", "[cmg]") {
    TauFun one = TauFun::one();
    YPolynomial p = YPolynomial::zero(2);
    p.add_term({2, 0}, one);
    p.add_term({0, 2}, -one);  // y1^2 - y2^2
    YPolynomial q = p.div_linear_difference(0, 1);
    YPolynomial expect = YPolynomial::zero(2);
    expect.add_term({1, 0}, one);
    expect.add_term({0, 1}, one);
    REQUIRE(q == expect);

    YPolynomial odd = YPolynomial::zero(2);
    odd.add_term({1, 1}, one);
    REQUIRE_THROWS_AS(odd.div_linear_difference(0, 1), NotDivisible);

    YPolynomial prod = p * q;
    REQUIRE(YPolynomial::div_exact(prod, q) == p);
}

TEST_CASE("lift and lower are inverse on numeric polynomials", "[cmg]") {
    CorrelatorProvider provider;
    YPolynomial p = cmg_polynomial(1, 2, provider).numeric();
    REQUIRE(lower(lift(p)) == p);
}
