#pragma once

#include <stdexcept>
#include <string>

namespace geomca {

/// Bad arguments or malformed input. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A valid request that could not be completed (e.g. the edge cap was hit).
/// The CLI maps this to exit code 1.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InputErrorKind {
    FileNotFound,
    Empty,
    DimensionMismatch,
    NonFinite,
    Malformed,
    BadHeader,
    Truncated,
    TrailingBytes,
};

const char* to_string(InputErrorKind kind) noexcept;

/// Raised while ingesting point files. `kind()` tells the failure modes apart.
class InputError : public ValidationError {
public:
    InputError(InputErrorKind kind, const std::string& what)
        : ValidationError(what), kind_(kind) {}

    InputErrorKind kind() const noexcept { return kind_; }

private:
    InputErrorKind kind_;
};

}  // namespace geomca
