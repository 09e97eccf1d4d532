#include <doctest.h>

#include <algorithm>
#include <random>

#include "fsq/factorization.hpp"
#include "fsq/primality.hpp"
#include "oracles.hpp"

using namespace fsq;

namespace {

// Every factorization produced in these tests goes through this check.
Factorization checked(Factorization f, const Natural& x) {
  REQUIRE(f.value == x);
  REQUIRE(f.reconstruct() == x);
  for (std::size_t i = 1; i < f.entries.size(); ++i) REQUIRE(f.entries[i - 1].prime < f.entries[i].prime);
  for (const auto& e : f.entries) {
    REQUIRE(e.multiplicity >= 1);
    REQUIRE(classify(e.prime).prime_like());
  }
  REQUIRE(f.complete() == !f.cofactor.has_value());
  if (f.cofactor) {
    REQUIRE(*f.cofactor > 1);
    REQUIRE_FALSE(classify(*f.cofactor).prime_like());
  }
  return f;
}

std::vector<FactorEntry> entries(std::initializer_list<std::pair<unsigned long, std::uint32_t>> list) {
  std::vector<FactorEntry> out;
  for (auto [p, a] : list) out.push_back({Natural(p), a});
  return out;
}

std::vector<FactorEntry> entries_from(const std::vector<std::pair<unsigned long, std::uint32_t>>& list) {
  std::vector<FactorEntry> out;
  for (auto [p, a] : list) out.push_back({Natural(p), a});
  return out;
}

}  // namespace

TEST_SUITE("factorization") {
  TEST_CASE("trial_division examples") {
    auto f = checked(trial_division(Natural(120), 10), Natural(120));
    CHECK(f.entries == entries({{2, 3}, {3, 1}, {5, 1}}));
    CHECK(f.complete());

    // 12!+1 = 13^2 * 2834329; the prime remainder is kept as an entry.
    f = checked(trial_division(Natural(479001601), 100), Natural(479001601));
    CHECK(f.entries == entries({{13, 2}, {2834329, 1}}));
    CHECK(f.complete());

    f = checked(trial_division(Natural(101), 10), Natural(101));
    CHECK(f.entries == entries({{101, 1}}));
    CHECK(f.complete());
  }

  TEST_CASE("trial_division leaves a composite cofactor") {
    const Natural x = Natural(8) * 1000003 * 1000033;
    auto f = checked(trial_division(x, 1000), x);
    CHECK(f.status == FactorizationStatus::Partial);
    CHECK(f.entries == entries({{2, 3}}));
    CHECK(*f.cofactor == Natural(1000003) * 1000033);
    CHECK_THROWS(trial_division(Natural(1), 10));
  }

  TEST_CASE("trial_division beyond the cached prime table") {
    const Natural x = Natural(100'019) * 100'019 * 7;
    auto f = checked(trial_division(x, 200'000), x);
    CHECK(f.entries == entries({{7, 1}, {100019, 2}}));
  }

  TEST_CASE("perfect_power examples") {
    auto pp = perfect_power(Natural(5041));
    REQUIRE(pp);
    CHECK(pp->base == 71);
    CHECK(pp->exponent == 2);
    pp = perfect_power(Natural(8));
    REQUIRE(pp);
    CHECK(pp->base == 2);
    CHECK(pp->exponent == 3);
    CHECK_FALSE(perfect_power(Natural(12)));
    CHECK_FALSE(perfect_power(Natural(2)));
    CHECK_THROWS(perfect_power(Natural(1)));
  }

  TEST_CASE("perfect_power finds the maximal exponent") {
    for (auto [b, e] : std::vector<std::pair<unsigned long, unsigned>>{{2, 60}, {6, 15}, {10, 12}, {3, 35}, {12, 6}}) {
      Natural x;
      mpz_ui_pow_ui(x.get_mpz_t(), b, e);
      auto pp = perfect_power(x);
      REQUIRE(pp);
      CHECK(pp->base == b);
      CHECK(pp->exponent == e);
    }
    const Natural big = Natural("1000000000000000000000000000057");
    Natural x;
    mpz_pow_ui(x.get_mpz_t(), big.get_mpz_t(), 6);
    auto pp = perfect_power(x);
    REQUIRE(pp);
    CHECK(pp->base == big);
    CHECK(pp->exponent == 6);
    CHECK_FALSE(perfect_power(x + 1));
  }

  TEST_CASE("pollard_rho examples") {
    auto d = pollard_rho(Natural(8051), kDefaultRhoSeed, 1'000'000);
    REQUIRE(d);
    CHECK((*d == 83 || *d == 97));
    d = pollard_rho(Natural(10403), kDefaultRhoSeed, 1'000'000);
    REQUIRE(d);
    CHECK((*d == 101 || *d == 103));
    d = pollard_rho(Natural(25), kDefaultRhoSeed, 1'000'000);
    REQUIRE(d);
    CHECK(*d == 5);
    CHECK_THROWS(pollard_rho(Natural(8), 2, 100));
    CHECK_THROWS(pollard_rho(Natural(7), 2, 100));
  }

  TEST_CASE("pollard_rho on word-size and multi-limb semiprimes") {
    const Natural p("1000000000039"), q("1000000000000000003");
    for (const Natural& x : std::vector<Natural>{Natural(1000003) * 1000033, p * 1000003, p * q, p * Natural("100000000000000000039")}) {
      CAPTURE(x.get_str());
      const auto d = pollard_rho(x, kDefaultRhoSeed, 1 << 26);
      REQUIRE(d);
      CHECK(*d > 1);
      CHECK(*d < x);
      CHECK(x % *d == 0);
    }
  }

  TEST_CASE("pollard_rho honours the iteration cap") {
    const Natural hard = Natural("14029308060317546154181") * Natural("37280713718589679646221");
    CHECK_FALSE(pollard_rho(hard, kDefaultRhoSeed, 1000).has_value());
  }

  TEST_CASE("factorize examples") {
    auto f = checked(factorize(Natural(25)), Natural(25));
    CHECK(f.entries == entries({{5, 2}}));
    CHECK(f.complete());

    f = checked(factorize(Natural(479001601)), Natural(479001601));
    CHECK(f.entries == entries({{13, 2}, {2834329, 1}}));

    f = checked(factorize(Natural(39916801)), Natural(39916801));
    CHECK(f.entries == entries({{39916801, 1}}));

    f = checked(factorize(Natural(1)), Natural(1));
    CHECK(f.entries.empty());
    CHECK(f.complete());
    CHECK_THROWS(factorize(Natural(0)));
  }

  TEST_CASE("2834329 is prime by trial division") { CHECK(oracle::is_prime_trial(2834329)); }

  TEST_CASE("factorize agrees with naive trial division for x <= 10^5") {
    for (std::uint64_t x = 2; x <= 100'000; ++x) {
      const auto f = checked(factorize(to_natural(x)), to_natural(x));
      const auto expected = oracle::factor_trial(x);
      REQUIRE(f.complete());
      REQUIRE(f.entries.size() == expected.size());
      std::size_t i = 0;
      for (auto [p, a] : expected) {
        REQUIRE(f.entries[i].prime == to_natural(p));
        REQUIRE(f.entries[i].multiplicity == a);
        ++i;
      }
    }
  }

  TEST_CASE("factorize splits prime powers and repeated large primes") {
    const Natural p("1000000000039"), q("1000000007");
    Natural x = p * p * p * q * q * 1024;
    auto f = checked(factorize(x), x);
    CHECK(f.entries == std::vector<FactorEntry>{{2, 10}, {q, 2}, {p, 3}});

    Natural big = Natural("100000000000000000039");
    x = big * big * q;
    f = checked(factorize(x), x);
    CHECK(f.entries == std::vector<FactorEntry>{{q, 1}, {big, 2}});
  }

  TEST_CASE("factorize degrades to Partial when the budget runs out") {
    const Natural hard = Natural("14029308060317546154181") * Natural("37280713718589679646221");
    const Natural x = hard * 6;
    Budget budget;
    budget.wall_clock = std::chrono::milliseconds(200);
    auto f = checked(factorize(x, budget), x);
    CHECK(f.status == FactorizationStatus::Partial);
    CHECK(f.entries == entries({{2, 1}, {3, 1}}));
    CHECK(*f.cofactor == hard);

    budget.wall_clock = std::chrono::milliseconds(60'000);
    budget.rho_iteration_cap = 1;
    // A tiny per-attempt cap still terminates through the wall clock.
    FactorizeOptions options;
    options.budget = budget;
    options.budget.wall_clock = std::chrono::milliseconds(100);
    f = checked(factorize(hard, options), hard);
    CHECK(f.status == FactorizationStatus::Partial);
  }

  TEST_CASE("factorize is deterministic for a fixed seed") {
    const Natural x = Natural("13763753091226345046315979581580902400000002") * 3 * 67411;
    const auto a = factorize(x);
    const auto b = factorize(x);
    CHECK(a.entries == b.entries);
    CHECK(a.cofactor == b.cofactor);
  }

  TEST_CASE("n!+1 factorizations for n <= 20") {
    // Expected values: full factorizations computed with an independent
    // tool (sympy) and re-checked below by trial-division primality.
    const std::vector<std::vector<std::pair<unsigned long, std::uint32_t>>> expected = {
        {{2, 1}},
        {{3, 1}},
        {{7, 1}},
        {{5, 2}},
        {{11, 2}},
        {{7, 1}, {103, 1}},
        {{71, 2}},
        {{61, 1}, {661, 1}},
        {{19, 1}, {71, 1}, {269, 1}},
        {{11, 1}, {329891, 1}},
        {{39916801, 1}},
        {{13, 2}, {2834329, 1}},
        {{83, 1}, {75024347, 1}},
        {{23, 1}, {3790360487, 1}},
        {{59, 1}, {479, 1}, {46271341, 1}},
        {{17, 1}, {61, 1}, {137, 1}, {139, 1}, {1059511, 1}},
        {{661, 1}, {537913, 1}, {1000357, 1}},
        {{19, 1}, {23, 1}, {29, 1}, {61, 1}, {67, 1}, {123610951, 1}},
        {{71, 1}, {1713311273363831, 1}},
        {{20639383, 1}, {117876683047, 1}},
    };
    for (unsigned n = 1; n <= 20; ++n) {
      CAPTURE(n);
      const Natural x = oracle::factorial_by_multiplication(n) + 1;
      const auto f = checked(factorize(x), x);
      CHECK(f.complete());
      CHECK(f.entries == entries_from(expected[n - 1]));
      for (const auto& e : f.entries) CHECK(oracle::is_prime_trial(e.prime.get_ui()));
    }
  }

  TEST_CASE("entries are canonical regardless of construction order") {
    std::mt19937 rng(3);
    auto list = entries({{97, 1}, {2, 3}, {13, 2}, {7, 1}, {1000003, 4}});
    const auto reference = make_factorization(list);
    for (int i = 0; i < 20; ++i) {
      std::shuffle(list.begin(), list.end(), rng);
      const auto f = make_factorization(list);
      CHECK(f.entries == reference.entries);
      CHECK(f.value == reference.value);
    }
    CHECK(make_factorization(entries({{5, 1}, {5, 1}})).entries == entries({{5, 2}}));
  }
}
