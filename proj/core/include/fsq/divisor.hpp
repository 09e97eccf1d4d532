#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fsq/arith.hpp"
#include "fsq/factorization.hpp"

namespace fsq {

enum class Squarefree { SquareFree, NotSquareFree, Unknown };

struct SquarefreeStatus {
  Squarefree verdict = Squarefree::Unknown;
  std::optional<Natural> witness;  // p with p^2 | value, for NotSquareFree
};

inline constexpr std::uint64_t kDefaultDivisorSieveCeiling = 100'000'000;

/// Number of divisors, prod(a_i + 1). Requires a Complete factorization.
Natural sigma0(const Factorization& f);

/// Number of distinct prime divisors. Requires a Complete factorization.
std::size_t omega(const Factorization& f);

/// 2^omega as a Natural.
Natural two_pow_omega(const Factorization& f);

/// A repeated prime settles the question even on a Partial factorization;
/// SquareFree needs a Complete one.
SquarefreeStatus squarefree_status(const Factorization& f);

/// sigma0(f) == 2^omega(f).
bool identity_holds(const Factorization& f);

/// Divisor counts for 1..limit by marking multiples of every d. Entry 0 is
/// unused. Shares nothing with the factorization path.
std::vector<std::uint32_t> divisor_count_sieve(std::uint64_t limit,
                                               std::uint64_t ceiling = kDefaultDivisorSieveCeiling);

}  // namespace fsq
