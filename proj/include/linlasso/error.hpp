#pragma once

#include <stdexcept>
#include <string>

namespace linlasso {

/// Malformed or unusable input data (exit code 1 at the CLI).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments to a library call or command (exit code 2 at the CLI).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical precondition failed, e.g. a matrix that is not PSD.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPsdError : public NumericError {
public:
    using NumericError::NumericError;
};

class InconsistentSystemError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace linlasso
