#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crier {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (CSV, XES, JSON). Carries the 1-based row and the
/// offending column name when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t row = 0,
                      std::string column = {});

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

/// A precondition of an operation does not hold for the given arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace crier
