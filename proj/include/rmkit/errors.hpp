#pragma once

#include <stdexcept>
#include <string>

namespace rmkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value that should have been irrational reduced to a rational.
struct RationalValueError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

// Mobius transform with c = d = 0.
struct DegenerateMatrixError : Error {
    using Error::Error;
};

// Radicand is not squarefree (or not > 1) where a canonical one is required.
struct NonCanonicalRadicandError : Error {
    using Error::Error;
};

struct NotUnimodularError : Error {
    using Error::Error;
};

struct FixedPointAtInfinityError : Error {
    using Error::Error;
};

struct NotHyperbolicError : Error {
    using Error::Error;
};

// Desk-scale enumeration bound exceeded.
struct BoundExceededError : Error {
    using Error::Error;
};

struct NotIntegralError : Error {
    using Error::Error;
};

// Operation defined for real quadratic irrationals got a formal-imaginary one.
struct NotRealError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace rmkit
