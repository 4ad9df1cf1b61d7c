#pragma once

#include <stdexcept>
#include <string>

namespace sphaera {

/// Base of every geometric failure raised by the library.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the region where an operation is defined (e.g. a pole, a
/// point beyond the open hemisphere).
class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Collinear, coincident or otherwise degenerate configuration.
class DegeneracyError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// No open hemisphere contains the input.
class InfeasibleError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// A documented precondition (connectedness, monotonicity, symmetry, ...)
/// does not hold. The message names the failed predicate.
class PreconditionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// A root bracket could not be established or a bisection failed.
class NumericError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Sampled data is too coarse for the requested computation.
class ResolutionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// A closed form hits a zero denominator.
class SingularityError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

} // namespace sphaera
