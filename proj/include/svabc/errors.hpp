#pragma once

#include <stdexcept>
#include <string>

namespace svabc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter or argument violated its domain (invalid alpha, non-positive
/// variance, empty input, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Every particle weight collapsed to zero (all log-weights -inf). Only
/// reachable with a uniform ABC kernel whose bandwidth is too small for the
/// data scale.
struct DegenerateWeightsError : Error {
    using Error::Error;
};

/// The rejection sampler for the truncated parameter prior/posterior ran out
/// of attempts. The message carries the hyperparameters for diagnosis.
struct TruncationFailureError : Error {
    using Error::Error;
};

/// Malformed input file (CSV data, study config). The message names the file
/// and line.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace svabc
