#include "fsq/divisor.hpp"

#include <stdexcept>
#include <string>

#include "fsq/errors.hpp"

namespace fsq {

namespace {

void require_complete(const Factorization& f, const char* what) {
  if (!f.complete()) {
    throw IncompleteFactorization(std::string(what) + ": factorization of " + f.value.get_str() +
                                  " is partial");
  }
}

}  // namespace

Natural sigma0(const Factorization& f) {
  require_complete(f, "sigma0");
  Natural count = 1;
  for (const auto& e : f.entries) count *= static_cast<unsigned long>(e.multiplicity) + 1;
  return count;
}

std::size_t omega(const Factorization& f) {
  require_complete(f, "omega");
  return f.entries.size();
}

Natural two_pow_omega(const Factorization& f) {
  Natural out = 1;
  out <<= omega(f);
  return out;
}

SquarefreeStatus squarefree_status(const Factorization& f) {
  for (const auto& e : f.entries) {
    if (e.multiplicity >= 2) return {Squarefree::NotSquareFree, e.prime};
  }
  if (f.complete()) return {Squarefree::SquareFree, std::nullopt};
  return {};
}

bool identity_holds(const Factorization& f) { return sigma0(f) == two_pow_omega(f); }

std::vector<std::uint32_t> divisor_count_sieve(std::uint64_t limit, std::uint64_t ceiling) {
  if (limit < 1) throw std::invalid_argument("divisor_count_sieve: limit must be >= 1");
  if (limit > ceiling) {
    throw MemoryBudgetExceeded("divisor_count_sieve: limit " + std::to_string(limit) +
                               " exceeds ceiling " + std::to_string(ceiling));
  }
  std::vector<std::uint32_t> counts(limit + 1, 0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    for (std::uint64_t m = d; m <= limit; m += d) ++counts[m];
  }
  return counts;
}

}  // namespace fsq
