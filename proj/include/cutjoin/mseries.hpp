#pragma once

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "taufun.hpp"
#include "xseries.hpp"

namespace cutjoin {

// Multivariate power series in x_1..x_n truncated by total degree. Used by
// the closed-form verification path, where the identity lives in honest
// series land rather than in polynomials of the inverted variables.
class MSeries {
public:
    using Exponents = std::vector<int>;

    MSeries(int nv, int order) : nv_(nv), order_(order) {
        if (nv < 1 || order < 0) throw BadSeries("bad multivariate series shape");
    }

    static MSeries zero(int nv, int order) { return MSeries(nv, order); }
    static MSeries constant(int nv, int order, TauFun v) {
        MSeries s(nv, order);
        s.add_term(Exponents(static_cast<size_t>(nv), 0), std::move(v));
        return s;
    }
    // Univariate series placed on variable i.
    static MSeries embed(const XSeries& f, int nv, int i, int order) {
        if (order > f.order()) throw OrderTooLow("embedding exceeds source order");
        MSeries s(nv, order);
        for (int k = 0; k <= order; ++k) {
            Exponents e(static_cast<size_t>(nv), 0);
            e.at(static_cast<size_t>(i)) = k;
            s.add_term(std::move(e), f.coefficient(k));
        }
        return s;
    }

    int nvars() const { return nv_; }
    int order() const { return order_; }
    const std::map<Exponents, TauFun>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(Exponents e, TauFun v) {
        if (static_cast<int>(e.size()) != nv_) throw Error("series exponent arity mismatch");
        if (v.is_zero() || std::accumulate(e.begin(), e.end(), 0) > order_) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(std::move(e), std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    TauFun coefficient(const Exponents& e) const {
        if (std::accumulate(e.begin(), e.end(), 0) > order_)
            throw OrderTooLow("series coefficient beyond truncation order");
        auto it = t_.find(e);
        return it == t_.end() ? TauFun::zero() : it->second;
    }

    MSeries truncated(int order) const {
        if (order > order_) throw OrderTooLow("cannot extend a truncated series");
        MSeries s(nv_, order);
        for (const auto& [e, v] : t_) s.add_term(e, v);
        return s;
    }

    friend MSeries operator+(const MSeries& a, const MSeries& b) {
        MSeries r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [e, v] : b.t_) r.add_term(e, v);
        return r;
    }
    friend MSeries operator-(const MSeries& a, const MSeries& b) {
        MSeries r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [e, v] : b.t_) r.add_term(e, -v);
        return r;
    }
    MSeries operator-() const {
        MSeries r(nv_, order_);
        for (const auto& [e, v] : t_) r.t_.emplace(e, -v);
        return r;
    }
    friend MSeries operator*(const MSeries& a, const MSeries& b) {
        check_shape(a, b);
        MSeries r(a.nv_, std::min(a.order_, b.order_));
        for (const auto& [ea, va] : a.t_) {
            int da = std::accumulate(ea.begin(), ea.end(), 0);
            for (const auto& [eb, vb] : b.t_) {
                if (da + std::accumulate(eb.begin(), eb.end(), 0) > r.order_) continue;
                Exponents e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), va * vb);
            }
        }
        return r;
    }
    MSeries& operator+=(const MSeries& b) {
        if (b.order_ < order_) return *this = *this + b;
        for (const auto& [e, v] : b.t_) add_term(e, v);
        return *this;
    }
    MSeries& operator-=(const MSeries& b) {
        if (b.order_ < order_) return *this = *this - b;
        for (const auto& [e, v] : b.t_) add_term(e, -v);
        return *this;
    }
    MSeries& operator*=(const MSeries& b) { return *this = *this * b; }
    bool operator==(const MSeries& b) const {
        return nv_ == b.nv_ && order_ == b.order_ && t_ == b.t_;
    }
    bool operator!=(const MSeries& b) const { return !(*this == b); }

    MSeries scaled(const TauFun& s) const {
        MSeries r(nv_, order_);
        for (const auto& [e, v] : t_) r.add_term(e, v * s);
        return r;
    }

    // x_i d/dx_i.
    MSeries xddx(int i) const {
        MSeries r(nv_, order_);
        for (const auto& [e, v] : t_) {
            int k = e.at(static_cast<size_t>(i));
            if (k != 0) r.add_term(e, v * TauFun(Rational(k)));
        }
        return r;
    }

    MSeries dtau() const {
        MSeries r(nv_, order_);
        for (const auto& [e, v] : t_) r.add_term(e, v.dtau());
        return r;
    }

    // Substitute x_j := x_i (diagonal restriction); total degree is
    // preserved, so truncation is unaffected.
    MSeries substituted_equal(int i, int j) const {
        MSeries r(nv_, order_);
        for (const auto& [e, v] : t_) {
            Exponents f = e;
            f[static_cast<size_t>(i)] += f.at(static_cast<size_t>(j));
            f[static_cast<size_t>(j)] = 0;
            r.add_term(std::move(f), v);
        }
        return r;
    }

    TauFun constant_term() const { return coefficient(Exponents(static_cast<size_t>(nv_), 0)); }

    // 1/f for f with invertible constant term, by geometric expansion of the
    // valuation >= 1 remainder.
    MSeries inv_unit() const {
        TauFun c0 = constant_term();
        if (c0.is_zero()) throw NonzeroConstantTerm("series inverse of a non-unit");
        TauFun ic0 = TauFun::one() / c0;
        MSeries g = constant(nv_, order_, TauFun::one()) - scaled(ic0);  // val >= 1
        MSeries pow = constant(nv_, order_, TauFun::one());
        MSeries acc = pow;
        for (int k = 1; k <= order_; ++k) {
            pow *= g;
            acc += pow;
        }
        return acc.scaled(ic0);
    }

    // log f for f with constant term 1: -sum_k (1-f)^k / k.
    MSeries log_unit() const {
        if (constant_term() != TauFun::one())
            throw NonzeroConstantTerm("series log needs constant term 1");
        MSeries g = constant(nv_, order_, TauFun::one()) - *this;  // val >= 1
        MSeries pow = constant(nv_, order_, TauFun::one());
        MSeries acc = zero(nv_, order_);
        for (int k = 1; k <= order_; ++k) {
            pow *= g;
            acc -= pow.scaled(TauFun(Rational(1, k)));
        }
        return acc;
    }

    // Exact quotient by (x_i - x_j) via synthetic division in x_i. Returns a
    // series of order one lower (those coefficients are unaffected by the
    // truncation); throws NotDivisible if f(..x_i = x_j..) fails to vanish
    // through the truncation order.
    MSeries div_diff(int i, int j) const {
        if (order_ < 1) throw OrderTooLow("quotient order would be negative");
        // Slices f_k: coefficient of x_i^k, as series in the other variables.
        std::map<int, std::map<Exponents, TauFun>> slices;
        int dmax = 0;
        for (const auto& [e, v] : t_) {
            Exponents f = e;
            int k = f[static_cast<size_t>(i)];
            f[static_cast<size_t>(i)] = 0;
            slices[k][std::move(f)] = v;
            dmax = std::max(dmax, k);
        }
        auto slice = [&](int k) {
            MSeries s(nv_, order_);
            auto it = slices.find(k);
            if (it != slices.end())
                for (const auto& [e, v] : it->second) s.add_term(e, v);
            return s;
        };
        MSeries xj = zero(nv_, order_);
        {
            Exponents e(static_cast<size_t>(nv_), 0);
            e[static_cast<size_t>(j)] = 1;
            xj.add_term(std::move(e), TauFun::one());
        }
        MSeries q(nv_, order_ - 1);
        MSeries carry = zero(nv_, order_);  // q_k as a series in vars != i
        for (int k = dmax; k >= 1; --k) {
            carry = slice(k) + xj * carry;
            for (const auto& [e, v] : carry.terms()) {
                Exponents f = e;
                f[static_cast<size_t>(i)] = k - 1;
                q.add_term(std::move(f), v);
            }
        }
        MSeries rem = slice(0) + xj * carry;
        if (!rem.is_zero()) throw NotDivisible("series not divisible by the variable difference");
        return q;
    }

private:
    static void check_shape(const MSeries& a, const MSeries& b) {
        if (a.nv_ != b.nv_) throw Error("series arity mismatch");
    }

    int nv_;
    int order_;
    std::map<Exponents, TauFun> t_;
};

}  // namespace cutjoin
