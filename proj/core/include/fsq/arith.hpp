#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace fsq {

/// Arbitrary-precision integer. Values handled by this library are always
/// nonnegative; functions that require that check it at their boundary.
using Natural = mpz_class;

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
              "GMP ulong interop assumes an LP64 platform");

inline constexpr std::uint64_t kDefaultFactorialLimit = 20000;
inline constexpr std::uint64_t kDefaultSieveCeiling = 1'000'000'000;

inline Natural to_natural(std::uint64_t v) { return Natural(static_cast<unsigned long>(v)); }
inline bool fits_u64(const Natural& x) { return sgn(x) >= 0 && x.fits_ulong_p(); }
inline std::uint64_t to_u64(const Natural& x) { return x.get_ui(); }
inline std::size_t bit_length(const Natural& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

/// Exact n! = 1*2*...*n. Throws LimitExceeded when n > limit.
Natural factorial(std::uint64_t n, std::uint64_t limit = kDefaultFactorialLimit);

/// floor(sqrt(x)) by Newton iteration.
Natural isqrt(const Natural& x);

/// floor(x^(1/k)) for k >= 1.
Natural iroot(const Natural& x, unsigned k);

/// The root r with r*r == x, if x is a perfect square.
std::optional<Natural> is_perfect_square(const Natural& x);

/// Primes <= limit, ascending. Throws MemoryBudgetExceeded past `ceiling`.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        std::uint64_t ceiling = kDefaultSieveCeiling);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Jacobi symbol (a/n) for odd n.
int jacobi(std::uint64_t a, std::uint64_t n);

/// Montgomery arithmetic for an odd modulus below 2^63.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t modulus);

  std::uint64_t modulus() const { return m_; }
  std::uint64_t one() const { return one_; }
  std::uint64_t to(std::uint64_t a) const { return mul(a % m_, r2_); }
  std::uint64_t from(std::uint64_t a) const { return reduce(a); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }

 private:
  std::uint64_t reduce(unsigned __int128 t) const {
    std::uint64_t q = static_cast<std::uint64_t>(t) * inv_;
    std::uint64_t r = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(q) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }

  std::uint64_t m_;
  std::uint64_t inv_;  // -m^{-1} mod 2^64
  std::uint64_t r2_;   // 2^128 mod m
  std::uint64_t one_;  // 2^64 mod m
};

/// Word-size stream of n! mod m, starting at n = 0. One modular
/// multiplication per advance(). Requires 2 <= m < 2^63.
class WordFactorialStream {
 public:
  explicit WordFactorialStream(std::uint64_t modulus);

  std::uint64_t index() const { return n_; }
  std::uint64_t modulus() const { return m_; }
  std::uint64_t residue() const { return mont_ ? mont_->from(r_) : r_; }

  void advance() {
    ++n_;
    if (mont_) {
      step_ = mont_->add(step_, mont_->one());
      r_ = mont_->mul(r_, step_);
    } else {
      r_ = mulmod(r_, n_ % m_, m_);
    }
  }

 private:
  std::uint64_t m_;
  std::uint64_t n_ = 0;
  std::uint64_t r_;     // residue, in Montgomery form when mont_ is set
  std::uint64_t step_;  // n in Montgomery form
  std::optional<Montgomery> mont_;
};

/// Stream of n! mod m for an arbitrary modulus m >= 2. Uses word-size
/// arithmetic below 2^63 and Natural arithmetic otherwise.
class ResidueStream {
 public:
  explicit ResidueStream(const Natural& modulus);

  std::uint64_t index() const;
  const Natural& modulus() const { return modulus_; }
  Natural residue() const;
  void advance();

 private:
  struct Big {
    std::uint64_t n = 0;
    Natural r;
  };
  Natural modulus_;
  std::variant<WordFactorialStream, Big> state_;
};

struct FactorialResidue {
  std::uint64_t n;
  Natural residue;
  bool operator==(const FactorialResidue&) const = default;
};

/// Entries n = 1..n_max of n! mod modulus.
std::vector<FactorialResidue> factorial_residues(const Natural& modulus, std::uint64_t n_max);

}  // namespace fsq
