#pragma once

#include <stdexcept>
#include <string>

namespace cutjoin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Series with a nonzero constant term fed to an operation that requires
// positive valuation (composition inner argument, log1m, exp, pow_tau).
struct NonzeroConstantTerm : Error {
    using Error::Error;
};

// A coefficient beyond the tracked truncation order was requested.
struct OrderTooLow : Error {
    using Error::Error;
};

// A series fails a structural precondition (wrong valuation, zero linear
// coefficient where invertibility is required, mismatched orders).
struct BadSeries : Error {
    using Error::Error;
};

// Exact polynomial division left a nonzero remainder.
struct NotDivisible : Error {
    using Error::Error;
};

// Variable counts or exponent-vector lengths do not match.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A moduli index (g,n) with 2g-2+n < 1 was used where stability is required.
struct Unstable : Error {
    using Error::Error;
};

// A lambda-class monomial outside the implemented table (genus >= 2 terms
// beyond the leading one) was requested with exact values required.
struct UnsupportedLambdaMonomial : Error {
    using Error::Error;
};

// A product of two expressions that both contain symbolic atoms; the
// relation-extraction layer is linear by construction and refuses these.
struct NonlinearAtomProduct : Error {
    using Error::Error;
};

// Sum of phase-tracked scalars whose phases differ by an odd power of the
// imaginary unit; such a sum leaves the tracked one-dimensional family.
struct PhaseMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace cutjoin
