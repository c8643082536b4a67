// End-to-end acceptance run: one pass/fail line per check, exit code is the
// number of failures. Every comparison is exact rational arithmetic; the
// timed checks also enforce their budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <cutjoin/cli.hpp>
#include <cutjoin/identity.hpp>
#include <cutjoin/io.hpp>
#include <cutjoin/leading.hpp>
#include <cutjoin/relations.hpp>
#include <cutjoin/symmetrize.hpp>

using namespace cutjoin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::vector<int>> exponent_lists(int n, int sum) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n));
    std::function<void(int, int, int)> rec = [&](int idx, int left, int low) {
        if (idx == n) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (int v = low; v <= left; ++v) {
            cur[static_cast<size_t>(idx)] = v;
            rec(idx + 1, left - v, v);
        }
    };
    rec(0, sum, 0);
    return out;
}

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

bool check_1() {
    auto start = Clock::now();
    const int N = 20;
    XSeries om = omega_series(N);
    XSeries residual = series_sub(series_mul(om, series_pow_tau(om)), XSeries::x(N));
    bool ok = residual.is_zero();
    return ok && seconds_since(start) < 1.0;
}

bool check_2() {
    const int N = 10;
    XSeries om = omega_series(N);
    XSeries F = series_mul(XSeries::x(N), series_pow_tau(XSeries::x(N)));
    for (int n = 1; n <= N; ++n) {
        QPoly prod = QPoly::one();
        for (int a = 0; a <= n - 2; ++a) prod *= QPoly({Rational(a), Rational(n)});
        TauFun closed = TauFun(prod) * TauFun(Rational(1) / factorial(n));
        if (om.coefficient(n) != closed) return false;
        if (lagrange_coefficient(F, n, 1) != closed) return false;
    }
    return true;
}

bool check_3() {
    if (!check_derivative_identity(15)) return false;
    if (!check_omega_tau_transport(12)) return false;
    const int N = 15;
    XSeries om = omega_series(N);
    XSeries prod = series_mul(y_series(N),
                              XSeries::one(N) - series_scale(om, TauFun::tau() + TauFun::one()));
    return series_sub(prod, XSeries::one(N)).is_zero();
}

bool check_4() {
    auto start = Clock::now();
    InversionContext ctx(20);
    for (int i = 0; i <= 5; ++i) {
        YPolynomial p = phi_poly(i);
        if (p.total_degree() != 2 * i + 1) return false;
        if (!check_change_of_variable(p, phi_series(i, 20), ctx).is_zero()) return false;
    }
    return seconds_since(start) < 5.0;
}

bool check_5() {
    CorrelatorProvider provider;
    CmgPolynomial c = cmg_polynomial(0, 3, provider);

    TauFun t = TauFun::tau();
    TauFun pref = -(t * t) / (t + TauFun::one());
    YPolynomial closed = YPolynomial::zero(3);
    for (int e1 = 0; e1 <= 1; ++e1)
        for (int e2 = 0; e2 <= 1; ++e2)
            for (int e3 = 0; e3 <= 1; ++e3) {
                TauFun sign = (3 - e1 - e2 - e3) % 2 ? -TauFun::one() : TauFun::one();
                closed.add_term({e1, e2, e3}, pref * sign);
            }
    if (c.numeric() != closed) return false;

    // top part against the three-point case of the leading display
    YPolynomial display = YPolynomial::zero(3);
    display.add_term({1, 1, 1}, pref);
    return leading_part(c) == display;
}

bool check_6(CorrelatorProvider& provider) {
    auto start = Clock::now();
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}}) {
        VerificationReport rep;
        try {
            rep = verify_identity(g, m, provider);
        } catch (const NotDivisible&) {
            return false;  // a pair-term division left a remainder
        }
        if (!rep.zero()) return false;
        int d = 6 * g - 5 + 3 * m;
        if (rep.lhs.total_degree() != d || rep.rhs.total_degree() != d) return false;
    }
    return seconds_since(start) < 120.0;
}

bool check_7() {
    // every value the two-point genus-one instance consumes
    std::vector<CorrelatorKey> inputs = {
        CorrelatorKey(0, {0, 0, 0}),    CorrelatorKey(1, {1}),
        CorrelatorKey(1, {0, 2}),       CorrelatorKey(1, {1, 1}),
        CorrelatorKey(1, {0}, {1}),     CorrelatorKey(1, {0, 1}, {1}),
    };
    for (const auto& key : inputs)
        for (const Rational& delta : {Rational(1), Rational(-1, 7)}) {
            CorrelatorProvider provider;
            Rational base = provider.correlator(key).constant_part().num().coeff(0) /
                            provider.correlator(key).constant_part().den().coeff(0);
            CorrelatorProvider fresh;
            fresh.override_value(key, base + delta);
            if (verify_identity(1, 2, fresh).zero()) return false;
        }
    CorrelatorProvider provider;
    return !verify_identity(0, 4, provider, VerifyMode::Stable, 8, false).zero();
}

bool check_8(CorrelatorProvider& provider) {
    for (int n = 3; n <= 8; ++n)
        for (const auto& b : exponent_lists(n, n - 3))
            if (provider.psi(0, b) != genus0_closed(b)) return false;

    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 6; ++n) {
            if (2 * g - 2 + n < 1 || 3 * g - 3 + n < 0) continue;
            for (const auto& b : exponent_lists(n, 3 * g - 3 + n)) provider.psi(g, b);
        }
    for (const auto& [key, value] : provider.known()) {
        if (!key.lam.empty() || key.g > 2 || key.n() > 6) continue;
        std::vector<int> with0 = key.b;
        with0.push_back(0);
        Rational lowered = 0;
        for (size_t j = 0; j < key.b.size(); ++j) {
            if (key.b[j] == 0) continue;
            std::vector<int> down = key.b;
            --down[j];
            lowered += provider.psi(key.g, down);
        }
        if (provider.psi(key.g, with0) != lowered) return false;
        std::vector<int> with1 = key.b;
        with1.push_back(1);
        if (provider.psi(key.g, with1) != Rational(2 * key.g - 2 + key.n()) * value) return false;
    }
    return true;
}

bool check_9(CorrelatorProvider& provider) {
    std::vector<std::pair<CorrelatorKey, Rational>> collected;
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}}) {
        VerificationReport rep = dvv_leading_check(g, m, provider);
        if (!rep.zero()) return false;
        collected.insert(collected.end(), rep.values_used.begin(), rep.values_used.end());
    }
    auto find = [&](const CorrelatorKey& k, Rational& out) {
        for (const auto& [key, v] : collected)
            if (key == k) {
                out = v;
                return true;
            }
        return false;
    };
    Rational one_pt, string_red, dilaton_red;
    if (!find(CorrelatorKey(1, {1}), one_pt)) return false;
    if (!find(CorrelatorKey(1, {0, 2}), string_red)) return false;
    if (!find(CorrelatorKey(1, {1, 1}), dilaton_red)) return false;
    if (one_pt != Rational(1, 24)) return false;
    if (string_red != Rational(1, 24) || dilaton_red != Rational(1, 24)) return false;
    // consistency with the removal and rescaling reductions
    return string_red == one_pt && dilaton_red == Rational(2 * 1 - 2 + 1) * one_pt;
}

bool check_10() {
    CorrelatorProvider p1;
    std::vector<CorrelatorKey> rank_one = {CorrelatorKey(1, {0}, {1}),
                                           CorrelatorKey(1, {0, 1}, {1})};
    RelationExtraction e1 = extract_relations(1, 2, rank_one, p1);
    if (!e1.solution.consistent || !e1.solution.unique()) return false;
    // the one-point value is the seed of the whole rank-one family
    if (e1.values.at(rank_one[0]) != Rational(1, 24)) return false;
    if (e1.values.at(rank_one[1]) != Rational(1, 24)) return false;

    CorrelatorProvider p2;
    std::vector<CorrelatorKey> five = {CorrelatorKey(0, {0, 0, 0, 1, 1}),
                                       CorrelatorKey(0, {0, 0, 0, 0, 2})};
    RelationExtraction e2 = extract_relations(0, 5, five, p2);
    if (!e2.solution.consistent || !e2.solution.unique()) return false;
    return e2.values.at(five[0]) == genus0_closed({0, 0, 0, 1, 1}) &&
           e2.values.at(five[1]) == genus0_closed({0, 0, 0, 0, 2});
}

bool check_11() {
    auto parts = partitions_up_to(5);
    for (const auto& a : parts)
        for (const auto& b : parts) {
            if (a.size() + b.size() > 4) continue;
            if (!check_symmetrize_product(a, b)) return false;
        }
    for (const auto& a : parts) {
        if (a.size() > 4) continue;
        for (int l = 1; l <= static_cast<int>(a.size()); ++l)
            if (!check_symmetrize_derivative(a, l)) return false;
    }
    for (const auto& a : parts) {
        if (a.size() < 2 || a.size() > 5) continue;
        for (int l = 1; l <= static_cast<int>(a.size()) - 1; ++l)
            if (!check_symmetrize_second_derivative(a, l)) return false;
    }
    return true;
}

bool check_12() {
    auto invoke = [](std::vector<std::string> args, int& code) {
        std::ostringstream out, err;
        code = run(std::move(args), out, err);
        return out.str();
    };
    int code_a = -1, code_b = -1;
    std::string a = invoke({"verify", "--g", "1", "--m", "2", "--format", "json"}, code_a);
    std::string b = invoke({"verify", "--g", "1", "--m", "2", "--format", "json"}, code_b);
    if (code_a != 0 || code_b != 0 || a != b || a.empty()) return false;

    CorrelatorProvider provider;
    YPolynomial p = cmg_polynomial(1, 2, provider).numeric();
    PolynomialDocument doc = document_from_polynomial(p, 1, 2);
    PolynomialDocument back = parse_document(render_document(doc));
    if (!(back == doc) || polynomial_from_document(back) != p) return false;

    for (int n = 3; n <= 8; ++n)
        for (const auto& bl : exponent_lists(n, n - 3)) provider.psi(0, bl);
    for (int n = 1; n <= 6; ++n)
        for (const auto& bl : exponent_lists(n, n)) provider.psi(1, bl);
    for (int n = 1; n <= 3; ++n)
        for (const auto& bl : exponent_lists(n, n + 3)) provider.psi(2, bl);
    auto values = provider.known();
    if (values.size() < 50) return false;
    std::string path = "acceptance_cache_" + std::to_string(values.size()) + ".json";
    save_cache(path, cache_from_values(values));
    CacheFile loaded = load_cache(path);
    std::remove(path.c_str());
    return values_from_cache(loaded) == values;
}

}  // namespace

int main() {
    CorrelatorProvider shared;
    std::vector<std::pair<std::string, std::function<bool()>>> checks = {
        {"series inversion round-trip through order 20 within budget", check_1},
        {"coefficient closed form agrees with generic inversion to order 10", check_2},
        {"derivative, deformation, and reciprocal series identities", check_3},
        {"basis polynomials have exact degree and zero substitution residual", check_4},
        {"three-point polynomial matches its product and leading forms", check_5},
        {"residual vanishes on the stable verification suite with matching degrees",
         [&] { return check_6(shared); }},
        {"perturbed inputs and a dropped deformation term break the cancellation", check_7},
        {"recursion agrees with the factorial form plus removal and rescaling laws",
         [&] { return check_8(shared); }},
        {"top-degree comparison passes and reports the expected values",
         [&] { return check_9(shared); }},
        {"unknown-correlator extraction solves to the known values", check_10},
        {"symmetrization product and derivative rules hold exhaustively", check_11},
        {"command-line output is byte-stable and serialized forms round-trip", check_12},
    };

    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        bool ok = false;
        std::string note;
        try {
            ok = checks[i].second();
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" (exception: ") + e.what() + ")";
        }
        if (!ok) ++failures;
        std::printf("check %2zu %s %s%s\n", i + 1, ok ? "PASS" : "FAIL", checks[i].first.c_str(),
                    note.c_str());
        std::fflush(stdout);
    }
    return failures;
}
