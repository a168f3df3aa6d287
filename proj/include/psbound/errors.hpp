#pragma once

#include <stdexcept>
#include <string>

namespace psbound {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar argument (or matrix eigenvalue) lies outside a function's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operands have incompatible dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A configuration or input specification is invalid.
class SpecError : public Error {
public:
    using Error::Error;
};

/// A function required to be strictly positive vanishes (or turns negative)
/// inside its domain.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The companion g is not strictly increasing on the probed grid, so g^{-1}
/// cannot be constructed.
class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// A value lies outside the numerically probed range of an inverse function.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A matrix is singular or too ill-conditioned to invert reliably.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// A random-model generator exhausted its sampling budget.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// The iterative eigensolver did not converge within its sweep budget.
/// Carries the remaining off-diagonal Frobenius mass for diagnosis.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double off_diagonal_residual)
        : Error(msg), residual(off_diagonal_residual) {}
    double residual;
};

} // namespace psbound
