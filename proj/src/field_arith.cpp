#include "mixmax/field_arith.hpp"

#include <array>
#include <string>

#include "mixmax/error.hpp"

namespace mixmax {

namespace {

std::uint64_t mulmod_plain(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t powmod_plain(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod_plain(r, a, n);
    a = mulmod_plain(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t w : kWitnesses) {
    std::uint64_t x = powmod_plain(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_plain(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(std::uint64_t p) : p_(p), mersenne61_(p == kMersenne61) {
  if (p < 2 || p > kMersenne61)
    throw InvalidArgument("modulus out of range [2, 2^61-1]: " + std::to_string(p));
  if (!is_prime_u64(p)) throw InvalidArgument("modulus is not prime: " + std::to_string(p));
}

Residue reduce(const BigInt& x, const Modulus& m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m.value());  // floor mod: 0 <= r < p
  return Residue(r.get_ui());
}

Residue mul_special(Residue x, unsigned k, const Modulus& m) {
  if (k >= 63 || (std::uint64_t{1} << k) + 1 >= m.value())
    throw InvalidArgument("mul_special: 2^" + std::to_string(k) + "+1 is not below p");
  return mul_special_unchecked(x, k, m);
}

Residue pow_mod(Residue x, std::uint64_t e, const Modulus& m) {
  Residue r(1 % m.value());
  while (e) {
    if (e & 1) r = mul_mod(r, x, m);
    x = mul_mod(x, x, m);
    e >>= 1;
  }
  return r;
}

Residue pow_mod(Residue x, const BigInt& e, const Modulus& m) {
  if (sgn(e) < 0) throw InvalidArgument("pow_mod: negative exponent");
  Residue r(1 % m.value());
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul_mod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_mod(r, x, m);
  }
  return r;
}

Residue inv_mod(Residue x, const Modulus& m) {
  if (x.value == 0) throw InvalidArgument("inverse of zero");
  return pow_mod(x, m.value() - 2, m);
}

int special_shift(const BigInt& v) {
  if (v < 2) return -1;
  BigInt t = v - 1;
  if (mpz_popcount(t.get_mpz_t()) != 1) return -1;
  return static_cast<int>(mpz_scan1(t.get_mpz_t(), 0));
}

}  // namespace mixmax
