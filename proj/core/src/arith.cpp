#include "fsq/arith.hpp"

#include <stdexcept>
#include <string>

#include "fsq/errors.hpp"

namespace fsq {

namespace {

void require_nonnegative(const Natural& x, const char* what) {
  if (sgn(x) < 0) throw std::domain_error(std::string(what) + ": negative argument");
}

// Quadratic-residue masks: bit r is set when r is a square modulo the
// filter modulus.
template <unsigned M>
constexpr std::uint64_t square_mask() {
  std::uint64_t mask = 0;
  for (unsigned r = 0; r < M; ++r) mask |= std::uint64_t{1} << ((r * r) % M);
  return mask;
}

constexpr std::uint64_t kSquares64 = square_mask<64>();
constexpr std::uint64_t kSquares63 = square_mask<63>();
constexpr std::uint64_t kSquares11 = square_mask<11>();

}  // namespace

Natural factorial(std::uint64_t n, std::uint64_t limit) {
  if (n > limit) {
    throw LimitExceeded("factorial: n = " + std::to_string(n) + " exceeds limit " +
                        std::to_string(limit));
  }
  Natural acc = 1;
  // Multiply word-sized partial products first; far fewer bignum steps.
  std::uint64_t chunk = 1;
  for (std::uint64_t k = 2; k <= n; ++k) {
    if (chunk > UINT64_MAX / k) {
      acc *= to_natural(chunk);
      chunk = 1;
    }
    chunk *= k;
  }
  acc *= to_natural(chunk);
  return acc;
}

Natural isqrt(const Natural& x) {
  require_nonnegative(x, "isqrt");
  if (x < 2) return x;
  // 2^ceil(bits/2) >= sqrt(x): the iteration then decreases monotonically
  // until it stabilizes or would step back up.
  Natural guess = 1;
  guess <<= (bit_length(x) + 1) / 2;
  for (;;) {
    Natural next = (guess + x / guess) >> 1;
    if (next >= guess) return guess;
    guess = std::move(next);
  }
}

Natural iroot(const Natural& x, unsigned k) {
  require_nonnegative(x, "iroot");
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (k == 1 || x < 2) return x;
  if (k == 2) return isqrt(x);
  const std::size_t bits = bit_length(x);
  if (k >= bits) return 1;
  Natural guess = 1;
  guess <<= (bits + k - 1) / k;
  Natural power;
  for (;;) {
    mpz_pow_ui(power.get_mpz_t(), guess.get_mpz_t(), k - 1);
    Natural next = (guess * (k - 1) + x / power) / k;
    if (next >= guess) return guess;
    guess = std::move(next);
  }
}

std::optional<Natural> is_perfect_square(const Natural& x) {
  require_nonnegative(x, "is_perfect_square");
  const std::uint64_t low = mpz_fdiv_ui(x.get_mpz_t(), 64);
  if (!((kSquares64 >> low) & 1)) return std::nullopt;
  if (!((kSquares63 >> mpz_fdiv_ui(x.get_mpz_t(), 63)) & 1)) return std::nullopt;
  if (!((kSquares11 >> mpz_fdiv_ui(x.get_mpz_t(), 11)) & 1)) return std::nullopt;
  Natural r = isqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::uint64_t ceiling) {
  if (limit > ceiling) {
    throw MemoryBudgetExceeded("sieve_primes: limit " + std::to_string(limit) +
                               " exceeds ceiling " + std::to_string(ceiling));
  }
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) primes.push_back(i);
  }
  return primes;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd");
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

Montgomery::Montgomery(std::uint64_t modulus) : m_(modulus) {
  if ((modulus & 1) == 0 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("Montgomery: modulus must be odd and below 2^63");
  }
  std::uint64_t inv = modulus;  // correct to 3 bits for odd m
  for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
  inv_ = 0 - inv;
  one_ = (0 - modulus) % modulus;
  r2_ = mulmod(one_, one_, modulus);
}

WordFactorialStream::WordFactorialStream(std::uint64_t modulus) : m_(modulus) {
  if (modulus < 2 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("WordFactorialStream: modulus must be in [2, 2^63)");
  }
  if (modulus & 1) {
    mont_.emplace(modulus);
    r_ = mont_->one();
    step_ = 0;
  } else {
    r_ = 1;
    step_ = 0;
  }
}

ResidueStream::ResidueStream(const Natural& modulus)
    : modulus_(modulus), state_(Big{0, Natural(1)}) {
  if (modulus < 2) throw std::invalid_argument("ResidueStream: modulus must be >= 2");
  if (fits_u64(modulus) && to_u64(modulus) < (std::uint64_t{1} << 63)) {
    state_.emplace<WordFactorialStream>(to_u64(modulus));
  }
}

std::uint64_t ResidueStream::index() const {
  return std::visit(
      [](const auto& s) -> std::uint64_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Big>) {
          return s.n;
        } else {
          return s.index();
        }
      },
      state_);
}

Natural ResidueStream::residue() const {
  if (const auto* w = std::get_if<WordFactorialStream>(&state_)) return to_natural(w->residue());
  return std::get<Big>(state_).r;
}

void ResidueStream::advance() {
  if (auto* w = std::get_if<WordFactorialStream>(&state_)) {
    w->advance();
    return;
  }
  auto& big = std::get<Big>(state_);
  ++big.n;
  big.r *= to_natural(big.n);
  big.r %= modulus_;
}

std::vector<FactorialResidue> factorial_residues(const Natural& modulus, std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("factorial_residues: n_max must be >= 1");
  ResidueStream stream(modulus);
  std::vector<FactorialResidue> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    stream.advance();
    out.push_back({n, stream.residue()});
  }
  return out;
}

}  // namespace fsq
