#include <doctest.h>

#include <random>
#include <set>

#include "fsq/arith.hpp"
#include "fsq/divisor.hpp"
#include "fsq/errors.hpp"
#include "oracles.hpp"

using namespace fsq;

namespace {

Factorization of(const Natural& x) {
  auto f = factorize(x);
  REQUIRE(f.reconstruct() == x);
  return f;
}

Factorization partial_with(std::vector<FactorEntry> entries, const Natural& cofactor) {
  Factorization f = make_factorization(std::move(entries));
  f.cofactor = cofactor;
  f.status = FactorizationStatus::Partial;
  f.value = f.reconstruct();
  return f;
}

}  // namespace

TEST_SUITE("divisor") {
  TEST_CASE("sigma0 examples") {
    CHECK(sigma0(of(factorial(12) + 1)) == 6);
    CHECK(sigma0(of(Natural(563))) == 2);
    CHECK(sigma0(of(Natural(39916801))) == 2);
    CHECK(sigma0(make_factorization({{2, 2}, {3, 2}})) == 9);
    CHECK(oracle::count_divisors_by_enumeration(36) == 9);
    CHECK(sigma0(of(Natural(1))) == 1);
  }

  TEST_CASE("omega examples") {
    const auto f12 = of(factorial(12) + 1);
    CHECK(omega(f12) == 2);
    CHECK(two_pow_omega(f12) == 4);
    CHECK(omega(of(Natural(563))) == 1);
    const auto f30 = of(factorial(30) + 1);
    CHECK(omega(f30) == 5);
    CHECK(two_pow_omega(f30) == 32);
  }

  TEST_CASE("partial factorizations are rejected by sigma0 and omega") {
    const auto f = partial_with({{43, 1}}, Natural(1000003) * 1000033);
    CHECK_THROWS_AS(sigma0(f), IncompleteFactorization);
    CHECK_THROWS_AS(omega(f), IncompleteFactorization);
    CHECK_THROWS_AS(identity_holds(f), IncompleteFactorization);
  }

  TEST_CASE("squarefree_status examples") {
    auto s = squarefree_status(make_factorization({{5, 2}}));
    CHECK(s.verdict == Squarefree::NotSquareFree);
    CHECK(s.witness == Natural(5));

    s = squarefree_status(make_factorization({{13, 1}, {17, 1}}));
    CHECK(s.verdict == Squarefree::SquareFree);
    CHECK_FALSE(s.witness);

    s = squarefree_status(partial_with({{43, 1}}, Natural(1000003) * 1000033));
    CHECK(s.verdict == Squarefree::Unknown);

    // A repeated prime decides the question even on partial data.
    s = squarefree_status(partial_with({{43, 2}}, Natural(1000003) * 1000033));
    CHECK(s.verdict == Squarefree::NotSquareFree);
    CHECK(s.witness == Natural(43));
  }

  TEST_CASE("identity_holds examples") {
    CHECK(identity_holds(of(Natural(721))));
    CHECK_FALSE(identity_holds(of(factorial(12) + 1)));
    CHECK_FALSE(identity_holds(make_factorization({{5, 2}})));
  }

  TEST_CASE("divisor_count_sieve examples") {
    const auto counts = divisor_count_sieve(100);
    CHECK(counts[1] == 1);
    CHECK(counts[12] == 6);
    CHECK(counts[36] == 9);
    for (std::uint64_t n = 1; n <= 100; ++n) CHECK(counts[n] == oracle::count_divisors_by_enumeration(n));
    CHECK_THROWS_AS(divisor_count_sieve(1000, 999), MemoryBudgetExceeded);
    CHECK_THROWS(divisor_count_sieve(0));
  }

  TEST_CASE("odd divisor count iff perfect square, n <= 10^5") {
    const auto counts = divisor_count_sieve(100'000);
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
      REQUIRE((counts[n] % 2 == 1) == is_perfect_square(to_natural(n)).has_value());
    }
  }

  TEST_CASE("sigma0 and omega agree with the sieve and trial division, n <= 10^5") {
    const auto counts = divisor_count_sieve(100'000);
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
      const auto f = of(to_natural(n));
      REQUIRE(sigma0(f) == counts[n]);
      REQUIRE(omega(f) == oracle::factor_trial(n).size());
    }
  }

  TEST_CASE("square-free iff sigma0 = 2^omega on random factorizations") {
    const auto primes = sieve_primes(10'000);
    std::mt19937_64 rng(2018);
    for (int i = 0; i < 2000; ++i) {
      std::set<std::uint64_t> chosen;
      const std::size_t count = 1 + rng() % 6;
      while (chosen.size() < count) chosen.insert(primes[rng() % primes.size()]);
      std::vector<FactorEntry> entries;
      bool all_one = true;
      for (auto p : chosen) {
        const auto a = static_cast<std::uint32_t>(1 + rng() % 4);
        all_one &= a == 1;
        entries.push_back({to_natural(p), a});
      }
      const auto f = make_factorization(entries);
      const bool squarefree = squarefree_status(f).verdict == Squarefree::SquareFree;
      REQUIRE(squarefree == all_one);
      REQUIRE(squarefree == identity_holds(f));
    }
  }
}
