#include "fsq/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "fsq/primality.hpp"

namespace fsq {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kRhoBatch = 128;

const std::vector<std::uint64_t>& primes_up_to(std::uint64_t bound, std::vector<std::uint64_t>& scratch) {
  static const std::vector<std::uint64_t> cached = sieve_primes(kDefaultTrialBound);
  if (bound <= kDefaultTrialBound) return cached;
  scratch = sieve_primes(bound);
  return scratch;
}

struct RhoLimits {
  std::uint64_t cap;
  std::optional<Clock::time_point> deadline;
  std::uint64_t spent = 0;

  bool expired() const { return deadline && Clock::now() > *deadline; }
};

// Word-size Brent rho. x odd composite < 2^63. Returns x when the cycle collapses.
std::optional<std::uint64_t> rho_word(std::uint64_t x, std::uint64_t seed, std::uint64_t offset,
                                      RhoLimits& limits) {
  const Montgomery mont(x);
  const std::uint64_t c = mont.to(offset);
  auto f = [&](std::uint64_t v) { return mont.add(mont.mul(v, v), c); };
  auto diff = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };

  std::uint64_t y = mont.to(seed), saved = y, ys = y, q = mont.one();
  std::uint64_t g = 1, r = 1;
  std::uint64_t& spent = limits.spent;
  do {
    saved = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      y = f(y);
      if ((i & 0xffff) == 0xffff && limits.expired()) return std::nullopt;
    }
    spent += r;
    if (spent >= limits.cap) return std::nullopt;
    for (std::uint64_t k = 0; k < r && g == 1;) {
      ys = y;
      const std::uint64_t steps = std::min(kRhoBatch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = f(y);
        q = mont.mul(q, diff(saved, y));
      }
      g = std::gcd(mont.from(q), x);
      k += steps;
      spent += steps;
      if (g == 1 && spent >= limits.cap) return std::nullopt;
      if (g == 1 && limits.expired()) return std::nullopt;
    }
    r <<= 1;
  } while (g == 1);
  if (g == x) {
    // The batch product collapsed; replay it one step at a time.
    do {
      ys = f(ys);
      g = std::gcd(diff(saved, ys), x);
    } while (g == 1);
  }
  return g;
}

std::optional<Natural> rho_big(const Natural& x, std::uint64_t seed, std::uint64_t offset,
                               RhoLimits& limits) {
  const Natural c = to_natural(offset);
  Natural tmp;
  auto f = [&](Natural& v) {
    mpz_mul(tmp.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    tmp += c;
    mpz_mod(v.get_mpz_t(), tmp.get_mpz_t(), x.get_mpz_t());
  };

  Natural y = to_natural(seed) % x, saved, ys, q = 1, g = 1, d;
  std::uint64_t r = 1;
  std::uint64_t& spent = limits.spent;
  do {
    saved = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      f(y);
      if ((i & 0xffff) == 0xffff && limits.expired()) return std::nullopt;
    }
    spent += r;
    if (spent >= limits.cap) return std::nullopt;
    for (std::uint64_t k = 0; k < r && g == 1;) {
      ys = y;
      const std::uint64_t steps = std::min(kRhoBatch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        f(y);
        d = saved - y;
        mpz_mul(tmp.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
        mpz_mod(q.get_mpz_t(), tmp.get_mpz_t(), x.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
      k += steps;
      spent += steps;
      if (g == 1 && spent >= limits.cap) return std::nullopt;
      if (g == 1 && limits.expired()) return std::nullopt;
    }
    r <<= 1;
  } while (g == 1);
  if (g == x) {
    do {
      f(ys);
      d = saved - ys;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

// Tries offsets offset, offset+1, ... until a proper divisor appears or the limits run out.
std::optional<Natural> rho_attempt(const Natural& x, std::uint64_t seed, std::uint64_t offset,
                                   RhoLimits& limits) {
  const bool word = fits_u64(x) && to_u64(x) < (std::uint64_t{1} << 63);
  for (;; ++offset) {
    std::optional<Natural> d;
    if (word) {
      if (auto w = rho_word(to_u64(x), seed, offset, limits)) d = to_natural(*w);
    } else {
      d = rho_big(x, seed, offset, limits);
    }
    if (!d) return std::nullopt;
    if (*d != x) return d;
    if (limits.spent >= limits.cap || limits.expired()) return std::nullopt;
  }
}

void accept_prime(std::map<Natural, std::uint32_t>& found, const Natural& p, std::uint32_t mult) {
  found[p] += mult;
}

}  // namespace

Natural Factorization::reconstruct() const {
  Natural product = 1;
  Natural power;
  for (const auto& e : entries) {
    mpz_pow_ui(power.get_mpz_t(), e.prime.get_mpz_t(), e.multiplicity);
    product *= power;
  }
  if (cofactor) product *= *cofactor;
  return product;
}

Factorization make_factorization(std::vector<FactorEntry> entries) {
  std::map<Natural, std::uint32_t> merged;
  for (auto& e : entries) {
    if (e.multiplicity == 0) throw std::invalid_argument("make_factorization: zero multiplicity");
    merged[e.prime] += e.multiplicity;
  }
  Factorization f;
  for (auto& [p, a] : merged) f.entries.push_back({p, a});
  f.value = f.reconstruct();
  return f;
}

Factorization trial_division(const Natural& x, std::uint64_t bound) {
  if (x < 2) throw std::invalid_argument("trial_division: x must be >= 2");
  Factorization f;
  f.value = x;
  std::vector<std::uint64_t> scratch;
  const auto& primes = primes_up_to(bound, scratch);

  Natural rest = x;
  bool rest_is_prime = false;
  for (std::uint64_t p : primes) {
    if (p > bound) break;
    if (rest == 1) break;
    if (rest < to_natural(p) * p) {
      rest_is_prime = true;
      break;
    }
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    std::uint32_t a = 0;
    do {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++a;
    } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
    f.entries.push_back({to_natural(p), a});
  }
  if (rest == 1) return f;

  if (rest_is_prime) {
    f.entries.push_back({rest, 1});
    return f;
  }
  const auto verdict = classify(rest);
  if (verdict.prime_like()) {
    f.probabilistic = verdict.classification == Primality::ProbablePrime;
    f.entries.push_back({rest, 1});
  } else {
    f.cofactor = rest;
    f.status = FactorizationStatus::Partial;
  }
  return f;
}

std::optional<PerfectPower> perfect_power(const Natural& x) {
  if (x < 2) throw std::invalid_argument("perfect_power: x must be >= 2");
  const std::size_t bits = bit_length(x);
  std::vector<std::uint64_t> scratch;
  const auto& exponents = primes_up_to(kDefaultTrialBound, scratch);
  Natural power;
  for (std::uint64_t e : exponents) {
    if (e >= bits) break;
    Natural root = iroot(x, static_cast<unsigned>(e));
    mpz_pow_ui(power.get_mpz_t(), root.get_mpz_t(), e);
    if (power != x) continue;
    // Smallest prime exponent found; the root may itself be a power.
    if (auto inner = perfect_power(root)) {
      return PerfectPower{inner->base, inner->exponent * static_cast<unsigned>(e)};
    }
    return PerfectPower{root, static_cast<unsigned>(e)};
  }
  return std::nullopt;
}

std::optional<Natural> pollard_rho(const Natural& x, std::uint64_t seed, std::uint64_t cap,
                                   std::uint64_t offset) {
  if (x < 9 || mpz_even_p(x.get_mpz_t())) {
    throw std::invalid_argument("pollard_rho: x must be odd and >= 9");
  }
  RhoLimits limits{cap, std::nullopt};
  return rho_attempt(x, seed, offset, limits);
}

Factorization factorize(const Natural& x, const FactorizeOptions& options) {
  if (x < 1) throw std::invalid_argument("factorize: x must be >= 1");
  if (x == 1) {
    Factorization f;
    f.value = 1;
    return f;
  }
  Factorization head = trial_division(x, options.trial_bound);
  if (head.complete()) return head;

  const auto deadline = Clock::now() + options.budget.wall_clock;

  std::map<Natural, std::uint32_t> found;
  for (const auto& e : head.entries) accept_prime(found, e.prime, e.multiplicity);
  bool probabilistic = head.probabilistic;

  struct Pending {
    Natural value;
    std::uint32_t multiplicity;
  };
  std::vector<Pending> work{{*head.cofactor, 1}};
  std::vector<Pending> stuck;

  while (!work.empty()) {
    Pending item = std::move(work.back());
    work.pop_back();
    if (item.value == 1) continue;

    const auto verdict = classify(item.value);
    if (verdict.prime_like()) {
      probabilistic |= verdict.classification == Primality::ProbablePrime;
      accept_prime(found, item.value, item.multiplicity);
      continue;
    }
    if (verdict.divisor && *verdict.divisor != item.value) {
      Natural d = *verdict.divisor;
      work.push_back({item.value / d, item.multiplicity});
      work.push_back({std::move(d), item.multiplicity});
      continue;
    }
    if (auto pp = perfect_power(item.value)) {
      work.push_back({pp->base, item.multiplicity * pp->exponent});
      continue;
    }
    // The iteration cap applies per composite, across all offsets.
    RhoLimits limits{options.budget.rho_iteration_cap, deadline};
    std::optional<Natural> divisor = rho_attempt(item.value, options.seed, 1, limits);
    if (!divisor) {
      stuck.push_back(std::move(item));
      continue;
    }
    Natural other = item.value / *divisor;
    work.push_back({std::move(other), item.multiplicity});
    work.push_back({std::move(*divisor), item.multiplicity});
  }

  Factorization f;
  f.value = x;
  f.probabilistic = probabilistic;
  for (auto& [p, a] : found) f.entries.push_back({p, a});
  if (!stuck.empty()) {
    Natural rest = 1, power;
    for (const auto& s : stuck) {
      mpz_pow_ui(power.get_mpz_t(), s.value.get_mpz_t(), s.multiplicity);
      rest *= power;
    }
    f.cofactor = std::move(rest);
    f.status = FactorizationStatus::Partial;
  }
  return f;
}

Factorization factorize(const Natural& x, const Budget& budget) {
  FactorizeOptions options;
  options.budget = budget;
  return factorize(x, options);
}

}  // namespace fsq
