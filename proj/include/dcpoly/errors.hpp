#pragma once

#include <stdexcept>
#include <string>

namespace dcpoly {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands with inconsistent sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A feasible set that was required to be nonempty is empty.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A standing assumption of an algorithm does not hold for the given input
/// (no epigraph vertex, missing solution of a shifted problem, improper
/// function, ...).
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// The optimization problem was detected to be unbounded below.
class UnboundedError : public Error {
public:
    using Error::Error;
};

/// The dual algorithm was handed a convex function that is not closed.
class ClosednessError : public AssumptionError {
public:
    using AssumptionError::AssumptionError;
};

/// Floating point breakdown (tiny pivots, failed post-solve verification).
class NumericError : public Error {
public:
    using Error::Error;
};

/// A guard on problem size for the exhaustive oracles was violated.
class GuardError : public Error {
public:
    using Error::Error;
};

}  // namespace dcpoly
