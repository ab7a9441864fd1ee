#pragma once

#include <stdexcept>
#include <string>

namespace chenbar {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// d_out * d_in != 0 in a cohomology computation. Always an upstream sign bug.
class CompositionNonzero : public Error {
public:
    using Error::Error;
};

class DSquareNonzero : public Error {
public:
    using Error::Error;
};

class InhomogeneousRelation : public Error {
public:
    using Error::Error;
};

// Malformed generator data: bad degrees, duplicate names, inhomogeneous
// differentials, relations not closed under d.
class InvalidPresentation : public Error {
public:
    using Error::Error;
};

// A GradedAlgebra or AlgebraMorphism table violates one of its invariants.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class MiddleAlgebraNotSimplyConnected : public Error {
public:
    using Error::Error;
};

// The window asks for more degrees than an input algebra carries.
class InsufficientTruncation : public Error {
public:
    using Error::Error;
};

// d^2, delta^2, d delta + delta d or D^2 failed on an assembled window.
class SignConsistencyError : public Error {
public:
    using Error::Error;
};

class SquareNotCommuting : public Error {
public:
    using Error::Error;
};

class LadderNotCommuting : public Error {
public:
    using Error::Error;
};

class NotPolynomialBase : public Error {
public:
    using Error::Error;
};

class NonzeroDifferential : public Error {
public:
    using Error::Error;
};

} // namespace chenbar
