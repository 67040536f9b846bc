#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causal {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes (parse 2, validation 3, numeric 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexical or syntactic error in an expression or spec file.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset),
        detail_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

// Violated precondition, shape mismatch, unknown name or id.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failure of a numerical procedure: analytic-domain violation, singular or
// non-Lorentzian metric, divergent corrector, integration failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace causal
