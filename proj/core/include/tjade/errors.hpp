#pragma once

#include <stdexcept>
#include <string>

namespace tjade {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension or conformability violation.
struct ShapeError : Error {
    using Error::Error;
};

/// Bad argument value (empty input, unknown name, out-of-range mode, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Non-finite values or other numeric breakdown.
struct NumericError : Error {
    using Error::Error;
};

/// (Near-)singular matrix; `mode` is the 1-based tensor mode when known, 0 otherwise.
struct SingularityError : NumericError {
    SingularityError(const std::string& msg, int mode_in = 0)
        : NumericError(msg), mode(mode_in) {}
    int mode;
};

/// Asymptotic variance undefined (both face kurtosis means zero).
struct UndefinedVarianceError : Error {
    using Error::Error;
};

}  // namespace tjade
