#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "mpoly.hpp"

namespace cutjoin {

// Xi_m p_alpha = i^(-m-|alpha|) sum over sigma in S_m of
// x_sigma(1)^alpha_1 ... x_sigma(m)^alpha_m; the zero polynomial unless
// l(alpha) = m. Repeated parts contribute with multiplicity.
inline PhasePoly symmetrize_power_sum(const std::vector<int>& alpha, int m) {
    PhasePoly r(m);
    if (static_cast<int>(alpha.size()) != m) return r;
    int w = 0;
    for (int a : alpha) w += a;
    PhaseScalar unit = PhaseScalar::imaginary_unit(-(m + w));
    std::vector<int> slot(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) slot[static_cast<size_t>(i)] = i;
    do {
        std::vector<int> e(static_cast<size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            e[static_cast<size_t>(slot[static_cast<size_t>(i)])] = alpha[static_cast<size_t>(i)];
        r.add_term(std::move(e), unit);
    } while (std::next_permutation(slot.begin(), slot.end()));
    return r;
}

namespace detail {

inline PhasePoly phasepoly_xddx(const PhasePoly& p, int l) {
    PhasePoly r(p.nvars());
    for (const auto& [e, v] : p.terms()) {
        int k = e[static_cast<size_t>(l)];
        if (k) r.add_term(e, v * PhaseScalar(Rational(k)));
    }
    return r;
}

inline PhasePoly phasepoly_drop_last(const PhasePoly& p) {
    PhasePoly r(p.nvars() - 1);
    for (const auto& [e, v] : p.terms()) {
        if (e.back() != 0) throw Error("dropped variable still occurs");
        r.add_term(std::vector<int>(e.begin(), e.end() - 1), v);
    }
    return r;
}

}  // namespace detail

// Product rule: Xi over m+k variables of p_alpha p_beta equals the sum over
// ordered partitions (A, B) of the variable set, |A| = l(alpha),
// |B| = l(beta), of (Xi^A p_alpha)(Xi^B p_beta). The drop flag removes one
// assignment from the sum as a deliberate-breakage control.
inline bool check_symmetrize_product(const std::vector<int>& alpha, const std::vector<int>& beta,
                                     bool drop_one_assignment = false) {
    int k = static_cast<int>(alpha.size());
    int m = static_cast<int>(beta.size());
    int n = k + m;
    std::vector<int> ab = alpha;
    ab.insert(ab.end(), beta.begin(), beta.end());
    PhasePoly lhs = symmetrize_power_sum(ab, n);

    PhasePoly xa = symmetrize_power_sum(alpha, k);
    PhasePoly xb = symmetrize_power_sum(beta, m);
    PhasePoly rhs(n);
    bool dropped = false;
    std::vector<int> pick(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int from, int need) {
        if (need == 0) {
            if (drop_one_assignment && !dropped) {
                dropped = true;
                return;
            }
            std::vector<int> A(pick.begin(), pick.end()), B;
            std::set<int> inA(pick.begin(), pick.end());
            for (int i = 0; i < n; ++i)
                if (!inA.count(i)) B.push_back(i);
            rhs += xa.placed(n, A) * xb.placed(n, B);
            return;
        }
        for (int i = from; i <= n - need; ++i) {
            pick[static_cast<size_t>(k - need)] = i;
            rec(i + 1, need - 1);
        }
    };
    if (k == 0) {
        rhs = xa.placed(n, {}) * xb;
    } else {
        rec(0, k);
    }
    return (lhs - rhs).is_zero();
}

// Euler-derivative rule: x_l d/dx_l of Xi p_alpha re-expands over the parts
// of alpha with weights i^(-(i+1)) x_l^i against the symmetrization on the
// remaining variables. `l` is 1-based as in the statement.
inline bool check_symmetrize_derivative(const std::vector<int>& alpha, int l,
                                        bool flip_weight_sign = false) {
    int m = static_cast<int>(alpha.size());
    int li = l - 1;
    PhasePoly lhs = detail::phasepoly_xddx(symmetrize_power_sum(alpha, m), li);

    std::vector<int> where;
    for (int i = 0; i < m; ++i)
        if (i != li) where.push_back(i);
    PhasePoly rhs(m);
    for (size_t s = 0; s < alpha.size(); ++s) {
        int i = alpha[s];
        std::vector<int> reduced;
        for (size_t t = 0; t < alpha.size(); ++t)
            if (t != s) reduced.push_back(alpha[t]);
        PhaseScalar w(TauFun(Rational(i)), -(i + 1));
        if (flip_weight_sign) w = -w;
        PhasePoly part = symmetrize_power_sum(reduced, m - 1).placed(m, where);
        for (const auto& [e, v] : part.terms()) {
            std::vector<int> f = e;
            f[static_cast<size_t>(li)] += i;
            rhs.add_term(std::move(f), v * w);
        }
    }
    return (lhs - rhs).is_zero();
}

// Mixed second-derivative rule: l(alpha) = m+1, 1 <= l <= m; the doubly
// Euler-differentiated symmetrization restricted to x_{m+1} = x_l equals the
// ordered two-part re-expansion with weights i^(-(i+j+2)) x_l^(i+j).
inline bool check_symmetrize_second_derivative(const std::vector<int>& alpha, int l,
                                               bool flip_weight_sign = false) {
    int mp1 = static_cast<int>(alpha.size());
    int m = mp1 - 1;
    if (m < 1 || l < 1 || l > m) throw Error("index out of range for the second-derivative rule");
    int li = l - 1;
    PhasePoly big = symmetrize_power_sum(alpha, mp1);
    PhasePoly dd = detail::phasepoly_xddx(detail::phasepoly_xddx(big, mp1 - 1), li);
    PhasePoly lhs = detail::phasepoly_drop_last(dd.substituted_equal(li, mp1 - 1));

    std::vector<int> where;
    for (int i = 0; i < m; ++i)
        if (i != li) where.push_back(i);
    PhasePoly rhs(m);
    for (size_t s = 0; s < alpha.size(); ++s) {
        for (size_t t = 0; t < alpha.size(); ++t) {
            if (s == t) continue;
            int i = alpha[s], j = alpha[t];
            std::vector<int> reduced;
            for (size_t u = 0; u < alpha.size(); ++u)
                if (u != s && u != t) reduced.push_back(alpha[u]);
            PhaseScalar w(TauFun(Rational(i) * Rational(j)), -(i + j + 2));
            if (flip_weight_sign) w = -w;
            PhasePoly part = symmetrize_power_sum(reduced, m - 1).placed(m, where);
            for (const auto& [e, v] : part.terms()) {
                std::vector<int> f = e;
                f[static_cast<size_t>(li)] += i + j;
                rhs.add_term(std::move(f), v * w);
            }
        }
    }
    return (lhs - rhs).is_zero();
}

}  // namespace cutjoin
