#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strongnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DIMACS or feature-model text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The formula (possibly conjoined with assumptions) admits no model.
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but violates a precondition (out-of-range literal,
/// size limit, mismatched lengths, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace strongnet
