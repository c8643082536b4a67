#pragma once

#include <vector>

#include "mpoly.hpp"
#include "xseries.hpp"

namespace cutjoin {

// Inverse series of x(1-x)^tau: coefficient of x^n is
// prod_{a=0}^{n-2}(n tau + a) / n!.
inline XSeries omega_series(int N) {
    if (N < 1) throw BadSeries("omega_series needs order >= 1");
    XSeries s(N);
    for (int n = 1; n <= N; ++n) {
        QPoly p = QPoly::one();
        for (int a = 0; a <= n - 2; ++a)
            p *= QPoly({Rational(a), Rational(n)});
        s.set_coefficient(n, TauFun(p) * TauFun(Rational(1) / factorial(n)));
    }
    return s;
}

// The series of 1/(1 - (1+tau) omega): constant term 1, then
// (1+tau) prod_{a=1}^{n-1}(n tau + a) / (n-1)!.
inline XSeries y_series(int N) {
    if (N < 1) throw BadSeries("y_series needs order >= 1");
    XSeries s(N);
    s.set_coefficient(0, TauFun::one());
    for (int n = 1; n <= N; ++n) {
        QPoly p({Rational(1), Rational(1)});  // 1 + tau
        for (int a = 1; a <= n - 1; ++a)
            p *= QPoly({Rational(a), Rational(n)});
        s.set_coefficient(n, TauFun(p) * TauFun(Rational(1) / factorial(n - 1)));
    }
    return s;
}

// (x d/dx)^i applied to (y(x) - 1)/(tau + 1): the x^m coefficient is
// prod_{a=1}^{m-1}(m tau + a)/(m-1)! times m^i.
inline XSeries phi_series(int i, int N) {
    if (i < 0) throw Error("phi_series needs a nonnegative index");
    if (N < 1) throw BadSeries("phi_series needs order >= 1");
    XSeries s(N);
    for (int m = 1; m <= N; ++m) {
        QPoly p = QPoly::one();
        for (int a = 1; a <= m - 1; ++a)
            p *= QPoly({Rational(a), Rational(m)});
        Rational scale = Rational(1) / factorial(m - 1);
        for (int t = 0; t < i; ++t) scale *= m;
        s.set_coefficient(m, TauFun(p) * TauFun(scale));
    }
    return s;
}

// [x^n] of the k-th power of the compositional inverse of F, computed as
// (k/n) [x^{n-k}] (x/F)^n.
inline TauFun lagrange_coefficient(const XSeries& F, int n, int k) {
    if (!F.coefficient(0).is_zero()) throw BadSeries("inversion needs zero constant term");
    if (F.order() < 1 || F.coefficient(1).is_zero())
        throw BadSeries("inversion needs an invertible linear coefficient");
    if (k < 1 || k > n) throw Error("lagrange_coefficient needs 1 <= k <= n");
    if (n > F.order()) throw OrderTooLow("inversion target exceeds series order");
    // u = F/x, with enough terms to read off x^{n-k} from u^{-n}.
    XSeries u(n - k >= 0 ? n - k : 0);
    for (int j = 0; j <= u.order(); ++j) u.set_coefficient(j, F.coefficient(j + 1));
    XSeries w = series_inv(u);
    XSeries p = XSeries::one(w.order());
    for (int t = 0; t < n; ++t) p = series_mul(p, w);
    return p.coefficient(n - k) * TauFun(Rational(k, n));
}

// Full compositional inverse through order N via repeated k = 1 extraction.
inline XSeries lagrange_invert(const XSeries& F, int N) {
    if (N > F.order()) throw OrderTooLow("inverse order exceeds series order");
    XSeries g(N);
    for (int n = 1; n <= N; ++n) g.set_coefficient(n, lagrange_coefficient(F, n, 1));
    return g;
}

// The push-forward of x d/dx through the change of variables: as an operator
// in y it is y(y-1)((y tau + 1)/(tau + 1)) d/dy.
inline YPolynomial apply_D(const YPolynomial& p) {
    if (p.nvars() != 1) throw Error("apply_D expects a one-variable polynomial");
    YPolynomial fac(1);
    TauFun inv = TauFun::one() / (TauFun::tau() + TauFun::one());
    fac.add_term({3}, TauFun::tau() * inv);
    fac.add_term({2}, (TauFun::one() - TauFun::tau()) * inv);
    fac.add_term({1}, -inv);
    return fac * p.ddy(0);
}

// D^i applied to (y-1)/(tau+1); a polynomial of degree exactly 2i+1.
inline YPolynomial phi_poly(int i) {
    if (i < 0) throw Error("phi_poly needs a nonnegative index");
    YPolynomial p(1);
    TauFun inv = TauFun::one() / (TauFun::tau() + TauFun::one());
    p.add_term({1}, inv);
    p.add_term({0}, -inv);
    for (int t = 0; t < i; ++t) p = apply_D(p);
    return p;
}

struct InversionContext {
    int order;
    XSeries omega;
    XSeries y_of_x;

    explicit InversionContext(int N) : order(N), omega(omega_series(N)), y_of_x(y_series(N)) {}
};

// Substitute a series for the variable of a one-variable polynomial.
inline XSeries ypoly_eval_series(const YPolynomial& p, const XSeries& s) {
    if (p.nvars() != 1) throw Error("series substitution expects one variable");
    XSeries r = XSeries::zero(s.order());
    int deg = p.total_degree();
    for (int k = deg; k >= 0; --k) {
        r = series_mul(r, s);
        TauFun c = p.coeff({k});
        if (!c.is_zero()) r.set_coefficient(0, r.coefficient(0) + c);
    }
    return r;
}

// Residual p(y(x)) - f; the zero series certifies that p is the image of f
// under the change of variables.
inline XSeries check_change_of_variable(const YPolynomial& p, const XSeries& f,
                                        const InversionContext& ctx) {
    if (f.order() > ctx.order) throw OrderTooLow("target series exceeds context order");
    XSeries image = ypoly_eval_series(p, ctx.y_of_x).truncated(f.order());
    return series_sub(image, f);
}

// d/dtau omega * (1-(tau+1) omega) + omega (1-omega) ln(1-omega) = 0,
// the denominator-cleared form of the tau-transport of omega.
inline bool check_omega_tau_transport(int N) {
    if (N < 2) throw BadSeries("transport check needs order >= 2");
    XSeries om = omega_series(N);
    XSeries one = XSeries::one(N);
    TauFun tp1 = TauFun::tau() + TauFun::one();
    XSeries lhs = series_mul(series_dtau(om), one - series_scale(om, tp1));
    XSeries rhs = series_mul(series_mul(om, one - om), series_log1m(om));
    return series_add(lhs, rhs).is_zero();
}

// x omega' (1-(1+tau) omega) = omega (1-omega).
inline bool check_derivative_identity(int N) {
    if (N < 2) throw BadSeries("derivative check needs order >= 2");
    XSeries om = omega_series(N);
    XSeries one = XSeries::one(N);
    TauFun tp1 = TauFun::tau() + TauFun::one();
    XSeries lhs = series_mul(series_xddx(om), one - series_scale(om, tp1));
    XSeries rhs = series_mul(om, one - om);
    return series_sub(lhs, rhs).is_zero();
}

}  // namespace cutjoin
