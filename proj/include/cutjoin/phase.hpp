#pragma once

#include "taufun.hpp"

namespace cutjoin {

// Scalar of the form mag * i^ph with mag a rational function of tau and the
// phase ph taken mod 4 (i = sqrt(-1)). The symmetrization layer only ever
// produces sums whose terms agree in phase mod 2, so addition across
// incompatible phases is a hard error rather than a silent widening to Q(i).
class PhaseScalar {
public:
    PhaseScalar() : mag_(TauFun::zero()), ph_(0) {}
    PhaseScalar(TauFun mag, int ph) : mag_(std::move(mag)), ph_(mod4(ph)) { normalize(); }
    PhaseScalar(Rational c) : mag_(TauFun(std::move(c))), ph_(0) { normalize(); }
    PhaseScalar(long c) : mag_(TauFun(c)), ph_(0) { normalize(); }
    PhaseScalar(int c) : mag_(TauFun(c)), ph_(0) { normalize(); }

    static PhaseScalar zero() { return PhaseScalar(); }
    static PhaseScalar one() { return PhaseScalar(TauFun::one(), 0); }
    static PhaseScalar imaginary_unit(int ph = 1) { return PhaseScalar(TauFun::one(), ph); }

    const TauFun& mag() const { return mag_; }
    int phase() const { return ph_; }
    bool is_zero() const { return mag_.is_zero(); }
    // True when the value lies in Q(tau), i.e. the phase is even after folding.
    bool is_real() const { return ph_ % 2 == 0; }
    TauFun real_value() const {
        if (!is_real()) throw PhaseMismatch("PhaseScalar has odd phase, not a real value");
        return ph_ == 2 ? -mag_ : mag_;
    }

    friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
        return PhaseScalar(a.mag_ * b.mag_, a.ph_ + b.ph_);
    }
    friend PhaseScalar operator+(const PhaseScalar& a, const PhaseScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.ph_ == b.ph_) return PhaseScalar(a.mag_ + b.mag_, a.ph_);
        if (mod4(a.ph_ - b.ph_) == 2) return PhaseScalar(a.mag_ - b.mag_, a.ph_);
        throw PhaseMismatch("PhaseScalar addition across incompatible phases");
    }
    friend PhaseScalar operator-(const PhaseScalar& a, const PhaseScalar& b) {
        return a + PhaseScalar(-b.mag_, b.ph_);
    }
    PhaseScalar operator-() const { return PhaseScalar(-mag_, ph_); }
    PhaseScalar& operator+=(const PhaseScalar& b) { return *this = *this + b; }
    PhaseScalar& operator-=(const PhaseScalar& b) { return *this = *this - b; }
    PhaseScalar& operator*=(const PhaseScalar& b) { return *this = *this * b; }

    bool operator==(const PhaseScalar& b) const { return mag_ == b.mag_ && ph_ == b.ph_; }
    bool operator!=(const PhaseScalar& b) const { return !(*this == b); }

private:
    static int mod4(int p) { return ((p % 4) + 4) % 4; }
    // Canonical form: zero has phase 0; phases 2,3 fold into 0,1 by negating
    // the magnitude, so equal values compare equal.
    void normalize() {
        if (mag_.is_zero()) {
            ph_ = 0;
            return;
        }
        if (ph_ >= 2) {
            mag_ = -mag_;
            ph_ -= 2;
        }
    }

    TauFun mag_;
    int ph_;
};

}  // namespace cutjoin
