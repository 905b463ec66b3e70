#pragma once

#include <stdexcept>
#include <string>

namespace qot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes that do not line up (matrix sizes, block structures, resource dims).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative routine failed to converge.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Structural assumption violated (non-primitive channel, bad group table, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (JSON, spec strings, CLI flags).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace qot
