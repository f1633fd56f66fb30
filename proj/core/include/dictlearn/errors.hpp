#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dictlearn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Dictionary has no nonzero column, so no code can be computed.
class DegenerateDictionaryError : public Error {
 public:
  using Error::Error;
};

/// Aggregate matrix A is not symmetric (or otherwise not a valid aggregate).
class InvalidAggregateError : public Error {
 public:
  using Error::Error;
};

/// Not enough samples for the requested window/buffer.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Requested rank is incompatible with the data (e.g. r >= T for changepoints).
class InvalidRankError : public Error {
 public:
  using Error::Error;
};

/// A pixel or patch anchor is not covered by the data supplied.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates its documented precondition.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Binary or text file does not match its documented format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dictlearn
