#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fsq/arith.hpp"
#include "fsq/divisor.hpp"
#include "fsq/factorization.hpp"

namespace fsq {

/// The n for which n!+1 is known to have a repeated prime factor.
struct ExcludedSet {
  static constexpr std::array<std::uint64_t, 7> members = {4, 5, 7, 12, 23, 229, 562};

  static constexpr bool contains(std::uint64_t n) {
    for (auto m : members) {
      if (m == n) return true;
    }
    return false;
  }
};

enum class HitKind { SquareDivisor, Wilson, Brocard };

/// (n, p) with p^2 | n!+1, or for Brocard hits (n, root) with root^2 = n!+1.
/// p is 0 for Brocard hits.
struct ScanHit {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  HitKind kind = HitKind::SquareDivisor;
  std::optional<Natural> root;

  bool operator==(const ScanHit& o) const {
    return n == o.n && p == o.p && kind == o.kind && root == o.root;
  }
  bool operator<(const ScanHit& o) const { return n != o.n ? n < o.n : p < o.p; }
};

struct ScanProgress {
  std::string_view kind;
  std::size_t done = 0;
  std::size_t total = 0;
  std::size_t resumed = 0;
};

/// Execution settings shared by all scans. `should_stop` and `progress`
/// may be invoked from worker threads; progress calls are serialized.
struct ScanOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::function<bool()> should_stop;
  std::function<void(const ScanProgress&)> progress;
};

struct ScanResult {
  std::vector<ScanHit> hits;  // sorted by (n, p)
  bool complete = true;       // false when stopped before every item ran
  std::size_t items_total = 0;
  std::size_t items_resumed = 0;
};

// Largest prime usable in the word-size residue kernels (p^2 < 2^63).
inline constexpr std::uint64_t kMaxScanPrime = 3'037'000'493;

/// Every (n, p) with n <= n_max, prime p <= p_max and p^2 | n!+1. Each prime
/// walks n only up to p - 1: for n >= p, n!+1 is 1 mod p.
ScanResult scan_square_divisors(std::uint64_t n_max, std::uint64_t p_max,
                                const ScanOptions& options = {});

/// Primes p <= p_max with (p-1)! = -1 mod p^2.
ScanResult scan_wilson(std::uint64_t p_max, const ScanOptions& options = {});

/// n <= n_max with n!+1 a perfect square.
ScanResult scan_brocard(std::uint64_t n_max, const ScanOptions& options = {},
                        std::uint64_t factorial_limit = kDefaultFactorialLimit);

/// Previously published (sigma0, 2^omega) of n!+1 for 1 <= n <= 40.
struct ReferenceRow {
  std::uint64_t n;
  std::uint64_t sigma0;
  std::uint64_t two_pow_omega;
};
std::optional<ReferenceRow> reference_row(std::uint64_t n);

struct TableRow {
  std::uint64_t n = 0;
  FactorizationStatus status = FactorizationStatus::Partial;
  std::optional<Natural> sigma0;  // only for Complete rows
  std::optional<Natural> two_pow_omega;
  bool probabilistic = false;
  bool in_excluded_set = false;
  // Set for Complete rows that have a published reference value.
  std::optional<bool> matches_reference;
  Factorization factorization;
};

struct TableResult {
  std::vector<TableRow> rows;
  bool complete = true;
  std::size_t items_resumed = 0;
};

/// Factors n!+1 and derives one row.
TableRow table_row(std::uint64_t n, const FactorizeOptions& options = {});

/// Rows for n = 1..n_max; each row gets its own budget.
TableResult build_table(std::uint64_t n_max, const FactorizeOptions& options = {},
                        const ScanOptions& scan = {});

struct Verdict {
  std::uint64_t n = 0;
  Squarefree outcome = Squarefree::Unknown;
  std::optional<Natural> witness;
  bool in_excluded_set = false;
  bool consistent_with_conjecture = true;
  // Where the outcome came from: "residue-scan" or "factorization".
  std::string_view evidence;
  std::optional<Factorization> factorization;
};

/// True unless the outcome is definite and disagrees with membership in S.
constexpr bool consistent_with_conjecture(std::uint64_t n, Squarefree outcome) {
  switch (outcome) {
    case Squarefree::SquareFree:
      return !ExcludedSet::contains(n);
    case Squarefree::NotSquareFree:
      return ExcludedSet::contains(n);
    case Squarefree::Unknown:
      return true;
  }
  return true;
}

/// Looks for p^2 | n!+1 with p <= p_max by residue walks; without a hit,
/// only a Complete factorization can establish square-freeness.
Verdict verify_conjecture(std::uint64_t n, std::uint64_t p_max,
                          const FactorizeOptions& options = {});

}  // namespace fsq
