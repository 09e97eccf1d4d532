#include "fsq/primality.hpp"

#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include <zlib.h>

namespace fsq {

namespace {

constexpr std::array<std::uint64_t, 18> kPrimesBelow64 = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                          29, 31, 37, 41, 43, 47, 53, 59, 61};
constexpr std::array<std::uint64_t, 12> kDeterministicBases = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};

constexpr std::uint64_t small_prime_mask() {
  std::uint64_t mask = 0;
  for (auto p : kPrimesBelow64) mask |= std::uint64_t{1} << p;
  return mask;
}
constexpr std::uint64_t kSmallPrimeMask = small_prime_mask();

PrimalityVerdict composite_by_divisor(std::uint64_t d) {
  PrimalityVerdict v;
  v.divisor = to_natural(d);
  return v;
}

// Seed for the per-input base generator: CRC-32 over the magnitude bytes.
std::uint64_t seed_from(const Natural& x) {
  std::size_t count = 0;
  std::vector<unsigned char> bytes((bit_length(x) + 7) / 8 + 1);
  mpz_export(bytes.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(count));
  return static_cast<std::uint64_t>(crc) ^ (static_cast<std::uint64_t>(count) << 32);
}

}  // namespace

bool strong_probable_prime(std::uint64_t x, std::uint64_t base) {
  if (x < 3 || (x & 1) == 0) throw std::invalid_argument("strong_probable_prime: x must be odd and >= 3");
  base %= x;
  if (base == 0) return true;
  std::uint64_t d = x - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t y = powmod(base, d, x);
  if (y == 1 || y == x - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    y = mulmod(y, y, x);
    if (y == x - 1) return true;
    if (y == 1) return false;
  }
  return false;
}

bool strong_probable_prime(const Natural& x, const Natural& base) {
  if (x < 3 || mpz_even_p(x.get_mpz_t())) {
    throw std::invalid_argument("strong_probable_prime: x must be odd and >= 3");
  }
  Natural a = base % x;
  if (a == 0) return true;
  const Natural x_minus_1 = x - 1;
  const auto s = static_cast<unsigned>(mpz_scan1(x_minus_1.get_mpz_t(), 0));
  const Natural d = x_minus_1 >> s;
  Natural y;
  mpz_powm(y.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
  if (y == 1 || y == x_minus_1) return true;
  for (unsigned i = 1; i < s; ++i) {
    y = (y * y) % x;
    if (y == x_minus_1) return true;
    if (y == 1) return false;
  }
  return false;
}

PrimalityVerdict is_prime_small(std::uint64_t x) {
  if (x < 64 && ((kSmallPrimeMask >> x) & 1)) return {Primality::Prime, {}, {}};
  if (x < 2) return {};
  for (auto p : kPrimesBelow64) {
    if (x % p == 0) return composite_by_divisor(p);
  }
  if (x < 64 * 64) return {Primality::Prime, {}, {}};
  for (auto base : kDeterministicBases) {
    if (!strong_probable_prime(x, base)) {
      PrimalityVerdict v;
      v.witness = to_natural(base);
      return v;
    }
  }
  return {Primality::Prime, {}, {}};
}

PrimalityVerdict is_probable_prime(const Natural& x, unsigned rounds) {
  if (x < 2) throw std::invalid_argument("is_probable_prime: x must be >= 2");
  if (rounds < 1) throw std::invalid_argument("is_probable_prime: rounds must be >= 1");
  if (x < 64) {
    const auto v = to_u64(x);
    if ((kSmallPrimeMask >> v) & 1) return {Primality::ProbablePrime, {}, {}};
  }
  for (auto p : kPrimesBelow64) {
    if (x != p && mpz_divisible_ui_p(x.get_mpz_t(), p)) return composite_by_divisor(p);
  }
  if (!strong_probable_prime(x, Natural(2))) {
    PrimalityVerdict v;
    v.witness = Natural(2);
    return v;
  }
  // Bases uniform in [3, x-2], drawn from a generator seeded by x.
  std::mt19937_64 rng(seed_from(x));
  const Natural span = x - 4;
  for (unsigned i = 0; i < rounds; ++i) {
    Natural draw = 0;
    for (std::size_t bits = 0; bits < bit_length(x) + 64; bits += 64) {
      draw <<= 64;
      draw += to_natural(rng());
    }
    Natural base = draw % span + 3;
    if (!strong_probable_prime(x, base)) {
      PrimalityVerdict v;
      v.witness = std::move(base);
      return v;
    }
  }
  return {Primality::ProbablePrime, {}, {}};
}

PrimalityVerdict classify(const Natural& x) {
  if (fits_u64(x)) return is_prime_small(to_u64(x));
  return is_probable_prime(x);
}

}  // namespace fsq
