#pragma once

#include <utility>
#include <vector>

#include "taufun.hpp"

namespace cutjoin {

// Truncated power series in one formal variable x with TauFun coefficients.
// A series of order N carries the coefficients of x^0 .. x^N; asking beyond
// the order throws OrderTooLow instead of fabricating a zero.
class XSeries {
public:
    explicit XSeries(int order) : order_(check_order(order)), c_(static_cast<size_t>(order) + 1) {}
    XSeries(int order, std::vector<TauFun> c) : order_(check_order(order)), c_(std::move(c)) {
        c_.resize(static_cast<size_t>(order_) + 1);
    }

    static XSeries zero(int order) { return XSeries(order); }
    static XSeries constant(int order, TauFun v) {
        XSeries s(order);
        s.c_[0] = std::move(v);
        return s;
    }
    static XSeries one(int order) { return constant(order, TauFun::one()); }
    static XSeries x(int order) {
        XSeries s(order);
        if (order >= 1) s.c_[1] = TauFun::one();
        return s;
    }

    int order() const { return order_; }
    const TauFun& coefficient(int n) const {
        if (n < 0 || n > order_) throw OrderTooLow("series coefficient index exceeds order");
        return c_[static_cast<size_t>(n)];
    }
    void set_coefficient(int n, TauFun v) {
        if (n < 0 || n > order_) throw OrderTooLow("series coefficient index exceeds order");
        c_[static_cast<size_t>(n)] = std::move(v);
    }
    XSeries truncated(int order) const {
        if (order > order_) throw OrderTooLow("cannot extend a truncated series");
        XSeries s(order);
        for (int i = 0; i <= order; ++i) s.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
        return s;
    }
    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }
    bool operator==(const XSeries& b) const { return order_ == b.order_ && c_ == b.c_; }
    bool operator!=(const XSeries& b) const { return !(*this == b); }

private:
    static int check_order(int order) {
        if (order < 0) throw BadSeries("series order must be nonnegative");
        return order;
    }
    int order_;
    std::vector<TauFun> c_;

    friend XSeries series_add(const XSeries&, const XSeries&);
    friend XSeries series_sub(const XSeries&, const XSeries&);
    friend XSeries series_mul(const XSeries&, const XSeries&);
};

// Arithmetic truncates to the smaller order of the operands.
inline XSeries series_add(const XSeries& a, const XSeries& b) {
    int n = std::min(a.order(), b.order());
    XSeries r(n);
    for (int i = 0; i <= n; ++i) r.c_[static_cast<size_t>(i)] = a.coefficient(i) + b.coefficient(i);
    return r;
}

inline XSeries series_sub(const XSeries& a, const XSeries& b) {
    int n = std::min(a.order(), b.order());
    XSeries r(n);
    for (int i = 0; i <= n; ++i) r.c_[static_cast<size_t>(i)] = a.coefficient(i) - b.coefficient(i);
    return r;
}

inline XSeries series_mul(const XSeries& a, const XSeries& b) {
    int n = std::min(a.order(), b.order());
    XSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a.coefficient(i).is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.coefficient(j).is_zero()) continue;
            r.c_[static_cast<size_t>(i + j)] += a.coefficient(i) * b.coefficient(j);
        }
    }
    return r;
}

inline XSeries series_scale(const XSeries& a, const TauFun& s) {
    XSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) r.set_coefficient(i, a.coefficient(i) * s);
    return r;
}

inline XSeries operator+(const XSeries& a, const XSeries& b) { return series_add(a, b); }
inline XSeries operator-(const XSeries& a, const XSeries& b) { return series_sub(a, b); }
inline XSeries operator*(const XSeries& a, const XSeries& b) { return series_mul(a, b); }

// f(g(x)) for g with zero constant term, by Horner evaluation from the top
// coefficient down. Result order is g's order.
inline XSeries series_compose(const XSeries& f, const XSeries& g) {
    if (!g.coefficient(0).is_zero())
        throw NonzeroConstantTerm("series composition needs zero constant term inside");
    int n = g.order();
    XSeries r = XSeries::zero(n);
    for (int k = f.order(); k >= 0; --k) {
        r = series_mul(r, g);
        r.set_coefficient(0, r.coefficient(0) + f.coefficient(k));
    }
    return r;
}

// 1/f for f with invertible constant term.
inline XSeries series_inv(const XSeries& f) {
    const TauFun& c0 = f.coefficient(0);
    if (c0.is_zero()) throw NonzeroConstantTerm("series inverse of a non-unit");
    int n = f.order();
    XSeries r(n);
    TauFun inv0 = TauFun::one() / c0;
    r.set_coefficient(0, inv0);
    for (int k = 1; k <= n; ++k) {
        TauFun acc = TauFun::zero();
        for (int j = 1; j <= k; ++j) acc += f.coefficient(j) * r.coefficient(k - j);
        r.set_coefficient(k, -(acc * inv0));
    }
    return r;
}

// log f for f with constant term 1, via (log f)' = f'/f integrated termwise.
inline XSeries series_log(const XSeries& f) {
    if (f.coefficient(0) != TauFun::one())
        throw NonzeroConstantTerm("series log needs constant term 1");
    int n = f.order();
    XSeries inv = series_inv(f);
    XSeries r(n);
    // d[k] = coefficient of x^k in f', k = 0..n-1
    for (int k = 1; k <= n; ++k) {
        TauFun acc = TauFun::zero();
        for (int j = 1; j <= k; ++j)
            acc += f.coefficient(j) * TauFun(Rational(j)) * inv.coefficient(k - j);
        r.set_coefficient(k, acc / TauFun(Rational(k)));
    }
    return r;
}

// exp f for f with zero constant term, via exp(f)' = f' exp(f).
inline XSeries series_exp(const XSeries& f) {
    if (!f.coefficient(0).is_zero())
        throw NonzeroConstantTerm("series exp needs zero constant term");
    int n = f.order();
    XSeries r(n);
    r.set_coefficient(0, TauFun::one());
    for (int k = 1; k <= n; ++k) {
        TauFun acc = TauFun::zero();
        for (int j = 1; j <= k; ++j)
            acc += f.coefficient(j) * TauFun(Rational(j)) * r.coefficient(k - j);
        r.set_coefficient(k, acc / TauFun(Rational(k)));
    }
    return r;
}

// f^e for a TauFun exponent, defined as exp(e log f); f must have constant
// term 1 so the logarithm exists over the coefficient field.
inline XSeries series_pow(const XSeries& f, const TauFun& e) {
    return series_exp(series_scale(series_log(f), e));
}

// ln(1 - a) for a with zero constant term.
inline XSeries series_log1m(const XSeries& a) {
    if (!a.coefficient(0).is_zero())
        throw NonzeroConstantTerm("series log1m needs zero constant term");
    return series_log(XSeries::one(a.order()) - a);
}

// (1 - a)^tau computed as exp(tau * ln(1 - a)); every x^n coefficient is a
// polynomial in tau of degree at most n.
inline XSeries series_pow_tau(const XSeries& a) {
    return series_exp(series_scale(series_log1m(a), TauFun::tau()));
}

// The Euler operator x d/dx: multiplies the nth coefficient by n.
inline XSeries series_xddx(const XSeries& f) {
    XSeries r(f.order());
    for (int k = 1; k <= f.order(); ++k) r.set_coefficient(k, f.coefficient(k) * TauFun(Rational(k)));
    return r;
}

// Coefficient-wise d/dtau at fixed x.
inline XSeries series_dtau(const XSeries& f) {
    XSeries r(f.order());
    for (int k = 0; k <= f.order(); ++k) r.set_coefficient(k, f.coefficient(k).dtau());
    return r;
}

}  // namespace cutjoin
