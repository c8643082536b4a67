#pragma once

#include <utility>

#include "qpoly.hpp"

namespace cutjoin {

// Rational function in tau: num/den with den monic and gcd(num, den) = 1.
// This is the coefficient field for every series and polynomial downstream.
class TauFun {
public:
    TauFun() : num_(), den_(QPoly::one()) {}
    TauFun(Rational c) : num_(QPoly(std::move(c))), den_(QPoly::one()) {}
    TauFun(long c) : num_(QPoly(Rational(c))), den_(QPoly::one()) {}
    TauFun(int c) : num_(QPoly(Rational(c))), den_(QPoly::one()) {}
    explicit TauFun(QPoly num) : num_(std::move(num)), den_(QPoly::one()) {}
    TauFun(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static TauFun zero() { return TauFun(); }
    static TauFun one() { return TauFun(Rational(1)); }
    static TauFun tau() { return TauFun(QPoly::tau()); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const {
        if (!is_constant()) throw Error("TauFun is not a constant");
        return num_.coeff(0);
    }

    friend TauFun operator+(const TauFun& a, const TauFun& b) {
        if (a.den_ == b.den_) return TauFun(a.num_ + b.num_, a.den_);
        return TauFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend TauFun operator-(const TauFun& a, const TauFun& b) {
        if (a.den_ == b.den_) return TauFun(a.num_ - b.num_, a.den_);
        return TauFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    TauFun operator-() const {
        TauFun r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend TauFun operator*(const TauFun& a, const TauFun& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return TauFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend TauFun operator/(const TauFun& a, const TauFun& b) {
        if (b.is_zero()) throw Error("TauFun division by zero");
        if (a.is_zero()) return zero();
        return TauFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    TauFun& operator+=(const TauFun& b) { return *this = *this + b; }
    TauFun& operator-=(const TauFun& b) { return *this = *this - b; }
    TauFun& operator*=(const TauFun& b) { return *this = *this * b; }
    TauFun& operator/=(const TauFun& b) { return *this = *this / b; }

    bool operator==(const TauFun& b) const { return num_ == b.num_ && den_ == b.den_; }
    bool operator!=(const TauFun& b) const { return !(*this == b); }
    // Map ordering so TauFun can key associative containers; not a numeric order.
    bool operator<(const TauFun& b) const {
        auto key = [](const QPoly& p) {
            std::vector<Rational> v;
            for (int i = 0; i <= p.degree(); ++i) v.push_back(p.coeff(i));
            return v;
        };
        auto ka = std::make_pair(key(num_), key(den_));
        auto kb = std::make_pair(key(b.num_), key(b.den_));
        return ka < kb;
    }

    // d/dtau by the quotient rule.
    TauFun dtau() const {
        return TauFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    TauFun pow(int e) const {
        if (e < 0) {
            if (is_zero()) throw Error("TauFun::pow(negative) of zero");
            return one() / pow(-e);
        }
        TauFun r = one(), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Exact evaluation at a rational point; throws if the denominator vanishes.
    Rational eval(const Rational& t) const {
        Rational d = den_.eval(t);
        if (d == 0) throw Error("TauFun::eval at a pole");
        return num_.eval(t) / d;
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error("TauFun with zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly::one();
            return;
        }
        // Cheap pass: strip shared (tau + 1) factors, the dominant common
        // factor in this computation, before running the full gcd.
        QPoly tp1({Rational(1), Rational(1)});
        while (num_.degree() > 0 && den_.degree() > 0 && num_.eval(Rational(-1)) == 0 &&
               den_.eval(Rational(-1)) == 0) {
            num_ = QPoly::div_exact(num_, tp1);
            den_ = QPoly::div_exact(den_, tp1);
        }
        if (num_.degree() > 0 && den_.degree() > 0) {
            QPoly g = QPoly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = QPoly::div_exact(num_, g);
                den_ = QPoly::div_exact(den_, g);
            }
        }
        if (den_.leading() != 1) {
            Rational inv = Rational(1) / den_.leading();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    QPoly num_;
    QPoly den_;
};

}  // namespace cutjoin
