#include <catch_amalgamated.hpp>

#include <functional>
#include <vector>

#include <cutjoin/symmetrize.hpp>

using namespace cutjoin;

namespace {

// every nonempty partition whose weight is at most maxw
std::vector<std::vector<int>> partitions_up_to(int maxw) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            out.push_back(cur);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(maxw, maxw);
    return out;
}

}  // namespace

TEST_CASE("phase-weighted symmetrization on small inputs", "[symmetrize]") {
    PhasePoly p1 = symmetrize_power_sum({1}, 1);
    PhasePoly e1(1);
    e1.add_term({1}, PhaseScalar(Rational(-1)));
    REQUIRE(p1 == e1);

    PhasePoly p2 = symmetrize_power_sum({2, 1}, 2);
    PhasePoly e2(2);
    PhaseScalar u = PhaseScalar::imaginary_unit(-5);
    e2.add_term({2, 1}, u);
    e2.add_term({1, 2}, u);
    REQUIRE(p2 == e2);

    // length mismatch gives the zero polynomial
    REQUIRE(symmetrize_power_sum({1, 1}, 3).is_zero());
    REQUIRE(symmetrize_power_sum({3}, 2).is_zero());
}

TEST_CASE("repeated parts are weighted once per arrangement", "[symmetrize]") {
    PhasePoly p = symmetrize_power_sum({2, 2}, 2);
    PhasePoly e(2);
    // two identical slots still contribute both orderings
    e.add_term({2, 2}, PhaseScalar(Rational(2), -6));
    REQUIRE(p == e);
}

TEST_CASE("product splits over complementary index sets", "[symmetrize]") {
    auto parts = partitions_up_to(4);
    int checked = 0;
    for (const auto& a : parts)
        for (const auto& b : parts) {
            if (a.size() + b.size() > 4) continue;
            ++checked;
            REQUIRE(check_symmetrize_product(a, b));
        }
    REQUIRE(checked > 50);
    REQUIRE_FALSE(check_symmetrize_product({2}, {1, 1}, true));
}

TEST_CASE("first derivative acts position by position", "[symmetrize]") {
    auto parts = partitions_up_to(4);
    for (const auto& a : parts) {
        if (a.size() > 4) continue;
        for (int l = 1; l <= static_cast<int>(a.size()); ++l)
            REQUIRE(check_symmetrize_derivative(a, l));
    }
    REQUIRE_FALSE(check_symmetrize_derivative({2, 1}, 1, true));
}

TEST_CASE("second derivative merges ordered position pairs", "[symmetrize]") {
    auto parts = partitions_up_to(4);
    for (const auto& a : parts) {
        if (a.size() < 2 || a.size() > 4) continue;
        for (int l = 1; l <= static_cast<int>(a.size()) - 1; ++l)
            REQUIRE(check_symmetrize_second_derivative(a, l));
    }
    REQUIRE_FALSE(check_symmetrize_second_derivative({2, 1}, 1, true));
}

TEST_CASE("phase arithmetic stays in one real family", "[symmetrize]") {
    PhaseScalar a(Rational(3), 0);
    PhaseScalar b(Rational(5), 2);  // phase 2 is a real sign flip
    REQUIRE((a + b).is_real());
    REQUIRE((a + b).real_value() == TauFun(Rational(-2)));
    PhaseScalar c(Rational(1), 1);
    REQUIRE_THROWS_AS(a + c, PhaseMismatch);
    REQUIRE((a * c).is_real() == false);
}
