#pragma once

#include <stdexcept>
#include <string>

namespace cdecay {

// Common base so callers can catch every library error with one handler.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed graph/mask/matrix construction input (bad qubit count, duplicate
// edges, duplicate mask entries, ...).
struct InvalidSpec : Error {
    using Error::Error;
};

// Index outside the valid 1..n qubit range or outside a matrix dimension.
struct IndexOutOfRange : Error {
    using Error::Error;
};

// Scalar argument outside its documented domain (dephasing strength, tolerances).
struct OutOfRange : Error {
    using Error::Error;
};

// Matrix handed to the eigensolver is not Hermitian within tolerance.
struct NonHermitianInput : Error {
    using Error::Error;
};

// State vector norm deviates too far from 1.
struct NotNormalized : Error {
    using Error::Error;
};

// Broken object invariant (non-unit trace, incomplete Kraus set, ...).
struct InvalidState : Error {
    using Error::Error;
};

// Operation defined only for a specific qubit count (e.g. tri-negativity).
struct WrongQubitCount : Error {
    using Error::Error;
};

// Negative value where a non-negative one is required (rates, times).
struct NegativeArgument : Error {
    using Error::Error;
};

// Ungrammatical text input (measure names, edge lists, p ranges).
struct ParseError : Error {
    using Error::Error;
};

// Filesystem/stream failure while writing results.
struct IoError : Error {
    using Error::Error;
};

}  // namespace cdecay
