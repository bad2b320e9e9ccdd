#pragma once

// Exact arithmetic in GF(p) for word-sized primes p <= 2^61 - 1.
//
// Residues are kept canonical (0 <= value < p) after every operation. The
// Mersenne prime 2^61 - 1 gets a fold reduction: hi * 2^61 + lo == hi + lo.

#include <compare>
#include <cstdint>

#include "mixmax/bigint.hpp"

namespace mixmax {

using u128 = unsigned __int128;

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Deterministic Miller-Rabin, exact for the whole 64-bit range.
bool is_prime_u64(std::uint64_t n);

class Modulus {
 public:
  /// Throws InvalidArgument unless p is a prime in [2, 2^61 - 1].
  explicit Modulus(std::uint64_t p);

  static Modulus mersenne61() { return Modulus(kMersenne61); }

  std::uint64_t value() const { return p_; }
  bool is_mersenne61() const { return mersenne61_; }

  /// Reduces any 128-bit value.
  std::uint64_t reduce(u128 t) const {
    if (mersenne61_) {
      const u128 f = (t & kMersenne61) + (t >> 61);  // < 2^68
      const std::uint64_t r = static_cast<std::uint64_t>(f & kMersenne61) +
                              static_cast<std::uint64_t>(f >> 61);
      return r >= kMersenne61 ? r - kMersenne61 : r;
    }
    return static_cast<std::uint64_t>(t % p_);
  }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  bool mersenne61_;
};

/// Canonical element of GF(p). The modulus travels separately.
struct Residue {
  std::uint64_t value = 0;

  constexpr Residue() = default;
  constexpr explicit Residue(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(Residue, Residue) = default;
};

inline Residue reduce(std::uint64_t x, const Modulus& m) {
  return Residue(x < m.value() ? x : x % m.value());
}

/// Canonical residue of an arbitrary signed integer; negatives map to p - (|x| mod p).
Residue reduce(const BigInt& x, const Modulus& m);

inline Residue add_mod(Residue x, Residue y, const Modulus& m) {
  std::uint64_t s = x.value + y.value;  // < 2^62
  return Residue(s >= m.value() ? s - m.value() : s);
}

inline Residue sub_mod(Residue x, Residue y, const Modulus& m) {
  return Residue(x.value >= y.value ? x.value - y.value : x.value + m.value() - y.value);
}

inline Residue neg_mod(Residue x, const Modulus& m) {
  return Residue(x.value == 0 ? 0 : m.value() - x.value);
}

inline Residue mul_mod(Residue x, Residue y, const Modulus& m) {
  return Residue(m.reduce(static_cast<u128>(x.value) * y.value));
}

/// x * (2^k + 1) mod p by shift and add. Bit-identical to mul_mod(x, 2^k+1).
/// Throws InvalidArgument when 2^k + 1 >= p.
Residue mul_special(Residue x, unsigned k, const Modulus& m);

/// Unchecked form of mul_special for inner loops; the caller guarantees 2^k + 1 < p.
inline Residue mul_special_unchecked(Residue x, unsigned k, const Modulus& m) {
  if (m.is_mersenne61()) {
    // x * 2^k mod (2^61 - 1) is a 61-bit rotation.
    std::uint64_t rot = ((x.value << k) & kMersenne61) | (x.value >> (61 - k));
    return add_mod(Residue(rot), x, m);
  }
  return add_mod(Residue(m.reduce(static_cast<u128>(x.value) << k)), x, m);
}

Residue pow_mod(Residue x, std::uint64_t e, const Modulus& m);
Residue pow_mod(Residue x, const BigInt& e, const Modulus& m);

/// Multiplicative inverse; throws InvalidArgument for zero.
Residue inv_mod(Residue x, const Modulus& m);

/// Returns k when v == 2^k + 1 for some k >= 0, else -1.
int special_shift(const BigInt& v);

}  // namespace mixmax
