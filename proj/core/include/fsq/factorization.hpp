#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "fsq/arith.hpp"

namespace fsq {

/// One prime power p^a of a canonical factorization.
struct FactorEntry {
  Natural prime;
  std::uint32_t multiplicity = 1;

  bool operator==(const FactorEntry& o) const {
    return prime == o.prime && multiplicity == o.multiplicity;
  }
};

enum class FactorizationStatus { Complete, Partial };

/// value = prod(prime^multiplicity) * cofactor. Entries are strictly
/// ascending by prime. A cofactor is present exactly when status is
/// Partial, and it is composite.
struct Factorization {
  Natural value;
  std::vector<FactorEntry> entries;
  std::optional<Natural> cofactor;
  FactorizationStatus status = FactorizationStatus::Complete;
  // Some entry was accepted on a probable-prime verdict.
  bool probabilistic = false;

  bool complete() const { return status == FactorizationStatus::Complete; }
  Natural reconstruct() const;
};

/// Builds a Complete factorization from entries in any order; repeated
/// primes are merged.
Factorization make_factorization(std::vector<FactorEntry> entries);

struct Budget {
  std::chrono::milliseconds wall_clock{120'000};
  std::uint64_t rho_iteration_cap = std::uint64_t{1} << 30;
};

inline constexpr std::uint64_t kDefaultTrialBound = 100'000;
inline constexpr std::uint64_t kDefaultRhoSeed = 2;

struct FactorizeOptions {
  Budget budget;
  std::uint64_t trial_bound = kDefaultTrialBound;
  std::uint64_t seed = kDefaultRhoSeed;
};

/// Extracts every prime factor <= bound. A remaining cofactor is classified:
/// prime cofactors become entries, composite ones leave the result Partial.
Factorization trial_division(const Natural& x, std::uint64_t bound);

struct PerfectPower {
  Natural base;
  unsigned exponent;
};

/// (b, e) with b^e = x and e >= 2 maximal, if x is a perfect power.
std::optional<PerfectPower> perfect_power(const Natural& x);

/// Brent's variant of Pollard rho on f(y) = y^2 + offset, started at `seed`.
/// A collapsed cycle moves on to offset+1. Returns a nontrivial divisor, or nothing once
/// `cap` iterations are spent across all offsets.
std::optional<Natural> pollard_rho(const Natural& x, std::uint64_t seed, std::uint64_t cap,
                                   std::uint64_t offset = 1);

/// Full factorization under a budget; Partial when the budget runs out.
Factorization factorize(const Natural& x, const FactorizeOptions& options = {});
Factorization factorize(const Natural& x, const Budget& budget);

}  // namespace fsq
