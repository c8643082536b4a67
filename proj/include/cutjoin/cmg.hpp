#pragma once

#include <functional>
#include <map>
#include <vector>

#include "correlator.hpp"
#include "inversion.hpp"
#include "mpoly.hpp"
#include "mseries.hpp"

namespace cutjoin {

using LinPoly = MPoly<LinTau>;

inline LinPoly lift(const YPolynomial& p) {
    LinPoly r(p.nvars());
    for (const auto& [e, v] : p.terms()) r.add_term(e, LinTau(v));
    return r;
}

inline YPolynomial lower(const LinPoly& p) {
    YPolynomial r(p.nvars());
    for (const auto& [e, v] : p.terms()) {
        if (!v.is_constant()) throw Error("symbolic atoms remain in a numeric polynomial");
        r.add_term(e, v.constant_part());
    }
    return r;
}

inline void for_each_composition(int total, int parts,
                                 const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> c(static_cast<size_t>(parts), 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == parts - 1) {
            c[static_cast<size_t>(idx)] = left;
            fn(c);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[static_cast<size_t>(idx)] = v;
            rec(idx + 1, left - v);
        }
    };
    if (parts > 0) rec(0, total);
}

// The symmetrized genus-g m-point generating polynomial in y_1..y_m:
//   -(tau(1+tau))^{m-1} * sum over lambda blocks (mu, gamma(tau)) and over
//   exponent tuples b with sum b = 3g-3+m-deg(mu) of
//   <tau_b mu>_g * gamma(tau) * prod_i phi_{b_i}(y_i).
// Enumerating ordered tuples absorbs the 1/m! of the symmetrized definition.
struct CmgPolynomial {
    int genus = 0;
    int points = 0;
    bool gamma_partial = false;
    LinPoly poly{0};

    YPolynomial numeric() const { return lower(poly); }
};

inline CmgPolynomial cmg_polynomial(int g, int m, const CorrelatorProvider& provider) {
    CorrelatorKey probe(g, std::vector<int>(static_cast<size_t>(m), 0));
    if (m < 1 || !probe.stable())
        throw Unstable("generating polynomial at unstable (g,m)");
    GammaExpansion gamma = gamma_expansion(g);
    int dim = 3 * g - 3 + m;

    std::vector<LinPoly> phi;  // one-variable images, lifted
    for (int i = 0; i <= dim; ++i) phi.push_back(lift(phi_poly(i)));

    CmgPolynomial out;
    out.genus = g;
    out.points = m;
    out.gamma_partial = gamma.partial;
    out.poly = LinPoly::zero(m);

    for (const auto& [mu, gcoeff] : gamma.terms) {
        int k = std::accumulate(mu.begin(), mu.end(), 0);
        if (dim - k < 0) continue;
        for_each_composition(dim - k, m, [&](const std::vector<int>& b) {
            LinTau val = hodge_correlator(CorrelatorKey(g, b, mu), provider) * LinTau(gcoeff);
            if (val.is_zero()) return;
            LinPoly prod = LinPoly::constant(m, LinTau(1));
            for (int i = 0; i < m; ++i) {
                std::vector<int> where{i};
                prod *= phi[static_cast<size_t>(b[static_cast<size_t>(i)])].placed(m, where);
            }
            out.poly += prod.scaled(val);
        });
    }

    TauFun t = TauFun::tau();
    LinTau pref(-((t * (t + TauFun::one())).pow(m - 1)));
    out.poly = out.poly.scaled(pref);
    return out;
}

// ln(1 - omega(x)): the Euler-derivative image of the one-point unstable
// series. Self-checks the explicit coefficient form and the second Euler
// derivative -(y-1)/(tau+1) before returning.
inline XSeries unstable_c10_image(int N) {
    XSeries om = omega_series(N);
    XSeries img = series_log1m(om);
    for (int d = 1; d <= N; ++d) {
        QPoly p = QPoly::one();
        for (int a = 1; a <= d - 1; ++a) p *= QPoly({Rational(a), Rational(d)});
        TauFun expect = -(TauFun(p) * TauFun(Rational(1) / factorial(d)));
        if (img.coefficient(d) != expect)
            throw Error("one-point unstable image mismatch at order " + std::to_string(d));
    }
    XSeries second = series_xddx(img);
    XSeries expect2 = series_scale(phi_series(0, N), -TauFun::one());
    if (series_sub(second, expect2) != XSeries::zero(N))
        throw Error("second Euler derivative of the one-point image mismatch");
    return img;
}

// Bivariate check of the two-point unstable closed form: applying
// x1 d/dx1 + x2 d/dx2 to
//   -ln((omega1-omega2)/(x1-x2)) - tau(ln(1-omega1) + ln(1-omega2))
// must equal -tau(tau+1) E(x1) E(x2) with E = (y-1)/(tau+1), through total
// order N. `drop_tau_factor` deliberately breaks the right side (negative
// control).
inline bool unstable_c20_check(int N, bool drop_tau_factor = false) {
    if (N < 2) throw BadSeries("two-point check needs order >= 2");
    XSeries om = omega_series(N + 1);
    MSeries o1 = MSeries::embed(om, 2, 0, N + 1);
    MSeries o2 = MSeries::embed(om, 2, 1, N + 1);
    MSeries W = (o1 - o2).div_diff(0, 1);  // order N, constant term 1
    XSeries lg = series_log1m(om);
    MSeries c20 = -W.log_unit() -
                  (MSeries::embed(lg, 2, 0, N) + MSeries::embed(lg, 2, 1, N))
                      .scaled(TauFun::tau());
    MSeries lhs = c20.xddx(0) + c20.xddx(1);

    XSeries e = series_scale(y_series(N) - XSeries::one(N),
                             TauFun::one() / (TauFun::tau() + TauFun::one()));
    TauFun t = TauFun::tau();
    TauFun factor = drop_tau_factor ? -(t + TauFun::one()) : -(t * (t + TauFun::one()));
    MSeries rhs = (MSeries::embed(e, 2, 0, N) * MSeries::embed(e, 2, 1, N)).scaled(factor);
    return (lhs - rhs).is_zero();
}

}  // namespace cutjoin
