#pragma once

#include <stdexcept>
#include <string>

namespace vc {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Misuse of the graded group structure (level mismatch, level overflow).
struct LevelError : Error {
    using Error::Error;
};

// A value lies outside its declared domain (message, input, index, parameter).
struct DomainError : Error {
    using Error::Error;
};

// Malformed serialized data or an undecodable value.
struct DecodeError : Error {
    using Error::Error;
};

} // namespace vc
