#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace handlecalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An index or parameter is outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A documented hypothesis of an operation does not hold for the input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A data-structure invariant is violated by the input.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// An exhaustive search was requested beyond its size guard.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A result that is guaranteed by construction failed its post-check.
/// Seeing this means there is a bug in the library.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace handlecalc
