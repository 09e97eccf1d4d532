#pragma once

// Test-only reference implementations. Deliberately naive, and they share
// no code with the library paths they check.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace fsq::oracle {

inline bool is_prime_trial(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

// Prime -> multiplicity by repeated trial division.
inline std::map<std::uint64_t, std::uint32_t> factor_trial(std::uint64_t x) {
  std::map<std::uint64_t, std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    while (x % d == 0) {
      ++out[d];
      x /= d;
    }
  }
  if (x > 1) ++out[x];
  return out;
}

inline mpz_class factorial_by_multiplication(unsigned n) {
  mpz_class acc = 1;
  for (unsigned k = 2; k <= n; ++k) acc = acc * k;
  return acc;
}

inline std::uint64_t count_divisors_by_enumeration(std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d <= x; ++d) {
    if (x % d == 0) ++count;
  }
  return count;
}

}  // namespace fsq::oracle
