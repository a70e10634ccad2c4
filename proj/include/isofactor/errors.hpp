#pragma once

// Error hierarchy. Everything thrown by the library derives from Error, so
// callers that do not care about the category can catch a single type.

#include <stdexcept>
#include <string>

namespace isofactor {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed wire data or unusable CLI input.
struct ParseError : Error {
    using Error::Error;
};

// Rank/cluster decisions too close to a threshold, iteration budgets
// exhausted, or other conditioning trouble.
struct NumericalError : Error {
    using Error::Error;
};

// Input outside the domain of the requested operation (not form-unitary,
// not reversible, unsupported dimension, wrong class).
struct DomainError : Error {
    using Error::Error;
};

// A constructed factorization failed its own verification gate.
struct VerifyError : Error {
    using Error::Error;
};

} // namespace isofactor
