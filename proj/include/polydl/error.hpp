#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polydl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax. `position` is a 0-based byte offset into the
/// parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a structural constraint (arity mismatch,
/// empty domain, undeclared symbol, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit (tuple budget, search nodes, k-cap) was hit.
/// Distinct from a negative answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace polydl
