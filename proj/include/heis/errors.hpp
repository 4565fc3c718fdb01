#pragma once

#include <stdexcept>
#include <string>

namespace heis {

// Raised when a caller violates a documented precondition (bad radius,
// dimension mismatch, exponent out of range, unknown catalog name, ...).
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computation produces a non-finite value or a degenerate
// linear system. The message carries the offending node.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heis
