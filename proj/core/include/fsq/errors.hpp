#pragma once

#include <stdexcept>
#include <string>

namespace fsq {

// Raised when an input exceeds a configured size bound (factorial index,
// scan range).
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a table (sieve, divisor counts) would exceed its memory ceiling.
class MemoryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by divisor functions that need a complete factorization.
class IncompleteFactorization : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fsq
