#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace cutjoin {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. boost's cpp_rational keeps the canonical form this
// library relies on: gcd-reduced and denominator > 0 after every operation.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// m!! for odd m, with (-1)!! = 1 by the usual empty-product convention.
inline BigInt semifactorial(long m) {
    BigInt r = 1;
    for (long i = m; i >= 2; i -= 2) r *= i;
    return r;
}

// (2b - 1)!! and (2b + 1)!! show up as leading-coefficient weights.
inline Rational odd_semifactorial(long b2) {  // argument is the odd number itself
    return Rational(semifactorial(b2));
}

inline Rational parse_rational(const std::string& s) {
    try {
        if (s.empty()) throw ParseError("empty rational literal");
        return Rational(s);
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline std::string format_rational(const Rational& r) { return r.str(); }

}  // namespace cutjoin
