#include <catch_amalgamated.hpp>

#include <cutjoin/identity.hpp>

using namespace cutjoin;

TEST_CASE("assembled sides cancel at small stable indices", "[identity]") {
    CorrelatorProvider provider;
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}, {1, 3}}) {
        VerificationReport rep = verify_identity(g, m, provider);
        INFO("g=" << g << " m=" << m << " witness=" << rep.witness);
        REQUIRE(rep.zero());
        REQUIRE(rep.residual.terms().empty());
        REQUIRE(rep.lhs.total_degree() == 6 * g - 5 + 3 * m);
        REQUIRE(rep.rhs.total_degree() == 6 * g - 5 + 3 * m);
    }
}

TEST_CASE("each right-side piece is itself symmetric", "[identity]") {
    CorrelatorProvider provider;
    RhsParts parts = identity_rhs_parts(1, 2, provider);
    std::vector<int> swap01 = {1, 0};
    for (const LinPoly* p : {&parts.join, &parts.split, &parts.cut}) {
        YPolynomial num = lower(*p);
        REQUIRE(num.permuted(swap01) == num);
    }
}

TEST_CASE("perturbing one input value breaks the cancellation", "[identity]") {
    for (const Rational& delta : {Rational(1), Rational(-1, 7)}) {
        CorrelatorProvider provider;
        provider.override_value(CorrelatorKey(1, {1}), Rational(1, 24) + delta);
        VerificationReport rep = verify_identity(1, 2, provider);
        REQUIRE_FALSE(rep.zero());
        REQUIRE_FALSE(rep.witness.empty());
    }
}

TEST_CASE("dropping the deformation term breaks the cancellation", "[identity]") {
    CorrelatorProvider provider;
    VerificationReport rep = verify_identity(0, 4, provider, VerifyMode::Stable, 8, false);
    REQUIRE_FALSE(rep.zero());
}

TEST_CASE("closed three-point check runs in series form", "[identity]") {
    CorrelatorProvider provider;
    VerificationReport rep = verify_identity(0, 3, provider, VerifyMode::ClosedForm);
    REQUIRE(rep.zero());
    REQUIRE_FALSE(rep.experimental);
}

TEST_CASE("one-point instance is flagged experimental", "[identity]") {
    CorrelatorProvider provider;
    VerificationReport rep = verify_identity(1, 1, provider, VerifyMode::ClosedForm);
    REQUIRE(rep.zero());
    REQUIRE(rep.experimental);
}

TEST_CASE("stable mode refuses indices outside its statement", "[identity]") {
    CorrelatorProvider provider;
    REQUIRE_THROWS_AS(verify_identity(0, 3, provider), Unstable);
    REQUIRE_THROWS_AS(verify_identity(1, 1, provider), Unstable);
}
