#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace cutjoin {

// Dense univariate polynomial over Q in the deformation parameter tau.
// Coefficients are stored little-endian: c[k] multiplies tau^k. The zero
// polynomial is the empty vector and reports degree -1.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Rational c) : c_{std::move(c)} { trim(); }
    explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    QPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }

    static QPoly zero() { return {}; }
    static QPoly one() { return QPoly(Rational(1)); }
    static QPoly tau() { return QPoly({Rational(0), Rational(1)}); }
    static QPoly monomial(int k, Rational c = Rational(1)) {
        if (c == 0 || k < 0) return {};
        std::vector<Rational> v(static_cast<size_t>(k) + 1);
        v.back() = std::move(c);
        return QPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }
    const Rational& leading() const {
        if (c_.empty()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }
    QPoly operator-() const {
        std::vector<Rational> r(c_);
        for (auto& x : r) x = -x;
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const Rational& s) {
        if (s == 0) return {};
        std::vector<Rational> r(a.c_);
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }
    QPoly& operator+=(const QPoly& b) { return *this = *this + b; }
    QPoly& operator-=(const QPoly& b) { return *this = *this - b; }
    QPoly& operator*=(const QPoly& b) { return *this = *this * b; }

    bool operator==(const QPoly& b) const { return c_ == b.c_; }
    bool operator!=(const QPoly& b) const { return !(*this == b); }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return QPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    QPoly pow(int e) const {
        if (e < 0) throw Error("QPoly::pow with negative exponent");
        QPoly r = one(), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
        if (b.is_zero()) throw Error("QPoly division by zero");
        std::vector<Rational> rc(a.c_);
        std::vector<Rational> qc;
        int db = b.degree();
        int da = static_cast<int>(rc.size()) - 1;
        if (da >= db) qc.assign(static_cast<size_t>(da - db) + 1, Rational(0));
        while (da >= db) {
            if (rc[static_cast<size_t>(da)] != 0) {
                Rational f = rc[static_cast<size_t>(da)] / b.leading();
                qc[static_cast<size_t>(da - db)] = f;
                for (int i = 0; i <= db; ++i)
                    rc[static_cast<size_t>(da - db + i)] -= f * b.coeff(i);
            }
            --da;
        }
        q = QPoly(std::move(qc));
        r = QPoly(std::move(rc));
    }

    // Exact quotient; throws if the remainder is nonzero.
    static QPoly div_exact(const QPoly& a, const QPoly& b) {
        QPoly q, r;
        divmod(a, b, q, r);
        if (!r.is_zero()) throw NotDivisible("QPoly::div_exact remainder nonzero");
        return q;
    }

    // Monic gcd via the Euclidean algorithm. Remainders are rescaled to be
    // monic at every step to keep the rational coefficients small.
    static QPoly gcd(QPoly a, QPoly b) {
        auto monic = [](QPoly p) {
            if (!p.is_zero() && p.leading() != 1) p = p * (Rational(1) / p.leading());
            return p;
        };
        a = monic(std::move(a));
        b = monic(std::move(b));
        while (!b.is_zero()) {
            QPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = monic(std::move(r));
        }
        return a.is_zero() ? a : monic(std::move(a));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace cutjoin
