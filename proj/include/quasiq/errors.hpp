#pragma once

#include <stdexcept>

namespace quasiq {

// Raised when a computation would exceed a configured size cap (digit
// count, number of classes, modulus). Invalid arguments use
// std::invalid_argument.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by truncated p-adic arithmetic when no digit of a result is known.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quasiq
