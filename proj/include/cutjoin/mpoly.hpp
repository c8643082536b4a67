#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "phase.hpp"
#include "taufun.hpp"

namespace cutjoin {

inline TauFun coeff_inverse(const TauFun& v) { return TauFun::one() / v; }
inline PhaseScalar coeff_inverse(const PhaseScalar& v) {
    if (v.is_zero()) throw Error("inverse of zero scalar");
    return PhaseScalar(TauFun::one() / v.mag(), -v.phase());
}

// Sparse multivariate polynomial in y_1..y_n over a coefficient ring C.
// C must be default-constructible to zero and provide is_zero(), +, *, and
// unary -; division additionally needs a coeff_inverse overload. Terms are
// keyed by exponent vectors in lexicographic map order.
template <typename C>
class MPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, C>;

    explicit MPoly(int nv = 0) : nv_(nv) {}

    static MPoly zero(int nv) { return MPoly(nv); }
    static MPoly constant(int nv, C v) {
        MPoly p(nv);
        p.add_term(Exponents(static_cast<size_t>(nv), 0), std::move(v));
        return p;
    }
    static MPoly variable(int nv, int i, C v) {
        MPoly p(nv);
        Exponents e(static_cast<size_t>(nv), 0);
        e.at(static_cast<size_t>(i)) = 1;
        p.add_term(std::move(e), std::move(v));
        return p;
    }

    int nvars() const { return nv_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(Exponents e, C v) {
        if (static_cast<int>(e.size()) != nv_) throw Error("exponent arity mismatch");
        if (v.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(std::move(e), std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    C coeff(const Exponents& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? C() : it->second;
    }

    MPoly& operator+=(const MPoly& b) {
        check_arity(*this, b);
        for (const auto& [e, v] : b.t_) add_term(e, v);
        return *this;
    }
    MPoly& operator-=(const MPoly& b) {
        check_arity(*this, b);
        for (const auto& [e, v] : b.t_) add_term(e, -v);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) {
        a += b;
        return a;
    }
    friend MPoly operator-(MPoly a, const MPoly& b) {
        a -= b;
        return a;
    }
    MPoly operator-() const {
        MPoly r(nv_);
        for (const auto& [e, v] : t_) r.t_.emplace(e, -v);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        check_arity(a, b);
        MPoly r(a.nv_);
        for (const auto& [ea, va] : a.t_)
            for (const auto& [eb, vb] : b.t_) {
                Exponents e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), va * vb);
            }
        return r;
    }
    MPoly& operator*=(const MPoly& b) { return *this = *this * b; }
    bool operator==(const MPoly& b) const { return nv_ == b.nv_ && t_ == b.t_; }
    bool operator!=(const MPoly& b) const { return !(*this == b); }

    MPoly scaled(const C& s) const {
        MPoly r(nv_);
        for (const auto& [e, v] : t_) r.add_term(e, v * s);
        return r;
    }

    // Partial derivative with respect to y_i.
    MPoly ddy(int i) const {
        MPoly r(nv_);
        for (const auto& [e, v] : t_) {
            int k = e.at(static_cast<size_t>(i));
            if (k == 0) continue;
            Exponents f = e;
            f[static_cast<size_t>(i)] = k - 1;
            r.add_term(std::move(f), v * C(Rational(k)));
        }
        return r;
    }

    // Substitute y_j := y_i; the result still formally depends on nv_ vars.
    MPoly substituted_equal(int i, int j) const {
        MPoly r(nv_);
        for (const auto& [e, v] : t_) {
            Exponents f = e;
            f[static_cast<size_t>(i)] += f.at(static_cast<size_t>(j));
            f[static_cast<size_t>(j)] = 0;
            r.add_term(std::move(f), v);
        }
        return r;
    }

    // Embed into nv variables sending local variable k to global where[k].
    MPoly placed(int nv, const std::vector<int>& where) const {
        if (static_cast<int>(where.size()) != nv_) throw Error("placement arity mismatch");
        MPoly r(nv);
        for (const auto& [e, v] : t_) {
            Exponents f(static_cast<size_t>(nv), 0);
            for (size_t k = 0; k < e.size(); ++k) f.at(static_cast<size_t>(where[k])) += e[k];
            r.add_term(std::move(f), v);
        }
        return r;
    }

    // Relabel variables: new exponent of perm[k] is the old exponent of k.
    MPoly permuted(const std::vector<int>& perm) const { return placed(nv_, perm); }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, v] : t_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    MPoly homogeneous_part(int d) const {
        MPoly r(nv_);
        for (const auto& [e, v] : t_)
            if (std::accumulate(e.begin(), e.end(), 0) == d) r.add_term(e, v);
        return r;
    }

    C eval(const std::vector<C>& pt) const {
        if (static_cast<int>(pt.size()) != nv_) throw Error("evaluation arity mismatch");
        C acc{};
        for (const auto& [e, v] : t_) {
            C term = v;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) term = term * pt[i];
            acc += term;
        }
        return acc;
    }

    // Exact division. If a = q*b the lex-leading term of b divides that of a
    // at every reduction step, so a failed step proves non-divisibility.
    static MPoly div_exact(const MPoly& a, const MPoly& b) {
        check_arity(a, b);
        if (b.is_zero()) throw Error("division by the zero polynomial");
        MPoly rem = a;
        MPoly q(a.nv_);
        const auto& [eb, vb] = *b.t_.rbegin();
        C ivb = coeff_inverse(vb);
        while (!rem.is_zero()) {
            const auto& [ea, va] = *rem.t_.rbegin();
            Exponents e(ea);
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] -= eb[i];
                if (e[i] < 0) throw NotDivisible("multivariate division leaves a remainder");
            }
            C cq = va * ivb;
            for (const auto& [ebb, vbb] : b.t_) {
                Exponents f(e);
                for (size_t i = 0; i < f.size(); ++i) f[i] += ebb[i];
                rem.add_term(std::move(f), -(cq * vbb));
            }
            q.add_term(std::move(e), std::move(cq));
        }
        return q;
    }

    // Exact quotient by the two-term divisor (x_i - x_j), by synthetic
    // division on the x_i slices; linear in the term count.
    MPoly div_linear_difference(int i, int j) const {
        std::map<int, MPoly> slices;
        int dmax = 0;
        for (const auto& [e, v] : t_) {
            Exponents f = e;
            int d = f[static_cast<size_t>(i)];
            f[static_cast<size_t>(i)] = 0;
            auto it = slices.find(d);
            if (it == slices.end()) it = slices.emplace(d, MPoly(nv_)).first;
            it->second.add_term(std::move(f), v);
            dmax = std::max(dmax, d);
        }
        auto slice = [&](int d) {
            auto it = slices.find(d);
            return it == slices.end() ? MPoly(nv_) : it->second;
        };
        MPoly xj = variable(nv_, j, C(Rational(1)));
        MPoly q(nv_);
        MPoly carry(nv_);
        for (int d = dmax; d >= 1; --d) {
            carry = slice(d) + xj * carry;
            for (const auto& [e, v] : carry.t_) {
                Exponents f = e;
                f[static_cast<size_t>(i)] = d - 1;
                q.add_term(std::move(f), v);
            }
        }
        if (!(slice(0) + xj * carry).is_zero())
            throw NotDivisible("polynomial not divisible by the variable difference");
        return q;
    }

private:
    static void check_arity(const MPoly& a, const MPoly& b) {
        if (a.nv_ != b.nv_) throw Error("polynomial arity mismatch");
    }

    int nv_;
    TermMap t_;
};

using YPolynomial = MPoly<TauFun>;
using PhasePoly = MPoly<PhaseScalar>;

inline YPolynomial ypoly_ddy(const YPolynomial& p, int i) { return p.ddy(i); }
// Fold variable `from` into `into` (y_from := y_into).
inline YPolynomial ypoly_subst(const YPolynomial& p, int from, int into) {
    return p.substituted_equal(into, from);
}
inline YPolynomial ypoly_div_exact(const YPolynomial& a, const YPolynomial& b) {
    return YPolynomial::div_exact(a, b);
}

// Coefficient-wise d/dtau, leaving the y variables fixed.
inline YPolynomial ypoly_dtau(const YPolynomial& p) {
    YPolynomial r(p.nvars());
    for (const auto& [e, v] : p.terms()) r.add_term(e, v.dtau());
    return r;
}

}  // namespace cutjoin
