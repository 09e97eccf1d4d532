#pragma once

#include <cstdint>
#include <optional>

#include "fsq/arith.hpp"

namespace fsq {

enum class Primality { Prime, Composite, ProbablePrime };

/// Outcome of a primality test. `Prime` comes only from the deterministic
/// word-size test, `ProbablePrime` only from the arbitrary-precision one.
/// A `Composite` verdict carries either the Miller-Rabin base that
/// witnessed it or a divisor found by trial division. 0 and 1 are
/// reported as Composite with neither.
struct PrimalityVerdict {
  Primality classification = Primality::Composite;
  std::optional<Natural> witness;
  std::optional<Natural> divisor;

  bool prime_like() const { return classification != Primality::Composite; }
};

inline constexpr unsigned kDefaultPrimalityRounds = 25;

/// Deterministic for every 64-bit input.
PrimalityVerdict is_prime_small(std::uint64_t x);

/// Base-2 strong test plus `rounds` Miller-Rabin rounds whose bases are
/// derived from x itself, so the verdict is reproducible.
PrimalityVerdict is_probable_prime(const Natural& x, unsigned rounds = kDefaultPrimalityRounds);

/// Word-size inputs go to is_prime_small, everything else to is_probable_prime.
PrimalityVerdict classify(const Natural& x);

/// Single strong-probable-prime round; false means `base` proves x composite.
bool strong_probable_prime(std::uint64_t x, std::uint64_t base);
bool strong_probable_prime(const Natural& x, const Natural& base);

}  // namespace fsq
