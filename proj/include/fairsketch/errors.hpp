#pragma once

#include <stdexcept>
#include <string>

namespace fairsketch {

// Base for every error thrown by the library. The CLI maps subclasses to exit
// codes (shape/parameter -> 2, data -> 3, numeric -> 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class NumericFailure : public Error {
public:
    using Error::Error;
};

// Malformed or missing input data (CSV ingestion, dataset checks).
class DataError : public Error {
public:
    using Error::Error;
};

// A caller-supplied callback broke its contract, e.g. a feasibility oracle
// that accepts a threshold below one it rejected.
class ContractViolation : public Error {
public:
    using Error::Error;
};

namespace detail {

template <class E>
[[noreturn]] inline void raise(const std::string& where, const std::string& what) {
    throw E(where + ": " + what);
}

}  // namespace detail
}  // namespace fairsketch
