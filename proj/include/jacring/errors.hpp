#pragma once

#include <stdexcept>
#include <string>

namespace jacring {

// Exit-code contract used by the CLI: parse errors -> 2, precondition
// violations -> 3, internal invariant breaches -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

// Mixed degrees in one polynomial: malformed input rather than a violated
// operation contract (graded values are homogeneous by construction).
struct NotHomogeneousError : ParseError {
    using ParseError::ParseError;
};

struct CharacteristicTooSmallError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DegreeOutOfRangeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SingularRingError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct AlphaInIdealError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ZeroVectorError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// A rational coefficient has a denominator divisible by the chosen prime;
// the caller must pick another prime.
struct PrimeReductionError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct BadFieldError : PreconditionError {
    using PreconditionError::PreconditionError;
};

}  // namespace jacring
