#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration: bad dimensions, unknown kinds, out-of-range knobs.
struct ConfigError : Error {
    using Error::Error;
};

// A caller broke an operation's precondition (dimension mismatch, negative
// threshold, ...).
struct ContractError : Error {
    using Error::Error;
};

// Iteration produced non-finite values or failed to converge.
struct NumericalError : Error {
    using Error::Error;
};

// Malformed input file; message carries the location.
struct ParseError : Error {
    using Error::Error;
};

// Metric is undefined for the given inputs (e.g. zero-energy reference).
struct MetricError : Error {
    using Error::Error;
};

}  // namespace dcs
