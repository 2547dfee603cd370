#pragma once

#include <stdexcept>
#include <string>

namespace coxcc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_ = 0;
};

// Input violates a compatibility clause or a structural contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (reducible group, wrong type...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration or orbit depth would exceed the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Numerical rank could not be decided cleanly, or a semisimple model is not
// available for the requested Cartan matrix.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxcc
