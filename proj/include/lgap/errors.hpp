#pragma once

#include <stdexcept>
#include <string>

namespace lgap {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape or size violation: ambient mismatch, invalid rank, bad window.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed input: CSV parse failures, config schema violations.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace lgap
