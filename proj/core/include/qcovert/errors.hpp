#pragma once

#include <stdexcept>
#include <string>

namespace qcovert {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Result dimension exceeds the configured cap.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not fit together (dims mismatch, bad subsystem index).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An operator has a kernel where full support was required.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Iterative method failed to converge, or a quantity is undefined.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Parameter validation failure (out-of-range inputs, invalid schedules).
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace qcovert
