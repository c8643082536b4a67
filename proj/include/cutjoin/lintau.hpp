#pragma once

#include <map>
#include <utility>

#include "taufun.hpp"

namespace cutjoin {

// Value that is affine-linear in a set of opaque unknowns ("atoms"):
//   c + sum_k a_k * atom_k,  c and a_k rational functions of tau.
// Atoms stand for correlator values that have not been pinned down yet, so
// assembling an identity over LinTau yields a linear system for them.
// Products of two genuinely atom-dependent values are outside the model and
// throw NonlinearAtomProduct.
class LinTau {
public:
    LinTau() = default;
    LinTau(TauFun c) : c_(std::move(c)) {}
    LinTau(Rational c) : c_(TauFun(std::move(c))) {}
    LinTau(long c) : c_(TauFun(c)) {}
    LinTau(int c) : c_(TauFun(c)) {}

    static LinTau atom(int id, TauFun coeff = TauFun::one()) {
        LinTau v;
        if (!coeff.is_zero()) v.a_.emplace(id, std::move(coeff));
        return v;
    }

    const TauFun& constant_part() const { return c_; }
    const std::map<int, TauFun>& atom_parts() const { return a_; }
    bool is_zero() const { return c_.is_zero() && a_.empty(); }
    bool is_constant() const { return a_.empty(); }

    friend LinTau operator+(const LinTau& x, const LinTau& y) {
        LinTau r = x;
        r.c_ += y.c_;
        for (const auto& [id, v] : y.a_) r.bump(id, v);
        return r;
    }
    friend LinTau operator-(const LinTau& x, const LinTau& y) { return x + (-y); }
    LinTau operator-() const {
        LinTau r;
        r.c_ = -c_;
        for (const auto& [id, v] : a_) r.a_.emplace(id, -v);
        return r;
    }
    friend LinTau operator*(const LinTau& x, const LinTau& y) {
        if (!x.is_constant() && !y.is_constant())
            throw NonlinearAtomProduct("product of two atom-dependent values");
        const LinTau& lin = x.is_constant() ? y : x;
        const TauFun& s = x.is_constant() ? x.c_ : y.c_;
        LinTau r;
        if (s.is_zero()) return r;
        r.c_ = lin.c_ * s;
        for (const auto& [id, v] : lin.a_) r.a_.emplace(id, v * s);
        return r;
    }
    friend LinTau operator/(const LinTau& x, const LinTau& y) {
        if (!y.is_constant()) throw NonlinearAtomProduct("division by an atom-dependent value");
        LinTau r;
        r.c_ = x.c_ / y.c_;
        for (const auto& [id, v] : x.a_) r.a_.emplace(id, v / y.c_);
        return r;
    }
    LinTau& operator+=(const LinTau& y) { return *this = *this + y; }
    LinTau& operator-=(const LinTau& y) { return *this = *this - y; }
    LinTau& operator*=(const LinTau& y) { return *this = *this * y; }
    bool operator==(const LinTau& y) const { return c_ == y.c_ && a_ == y.a_; }
    bool operator!=(const LinTau& y) const { return !(*this == y); }

    // Atom coefficients are tau-independent unknowns, so d/dtau acts on the
    // rational-function parts only.
    LinTau dtau() const {
        LinTau r;
        r.c_ = c_.dtau();
        for (const auto& [id, v] : a_) {
            TauFun d = v.dtau();
            if (!d.is_zero()) r.a_.emplace(id, std::move(d));
        }
        return r;
    }

private:
    void bump(int id, const TauFun& v) {
        auto it = a_.find(id);
        if (it == a_.end()) {
            if (!v.is_zero()) a_.emplace(id, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) a_.erase(it);
        }
    }

    TauFun c_;
    std::map<int, TauFun> a_;
};

inline LinTau coeff_inverse(const LinTau& v) {
    if (!v.is_constant()) throw NonlinearAtomProduct("inverse of an atom-dependent value");
    return LinTau(TauFun::one() / v.constant_part());
}

}  // namespace cutjoin
