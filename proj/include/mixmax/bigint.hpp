#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace mixmax {

using BigInt = mpz_class;

/// Parses a signed decimal integer, or the shorthand `2^k+c` / `2^k-c`.
/// Throws InvalidArgument on anything else.
BigInt parse_bigint(std::string_view text);

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

/// Requires 0 <= v < 2^64.
std::uint64_t to_u64(const BigInt& v);

/// Exact number of decimal digits of |v| (1 for zero).
std::size_t decimal_digits(const BigInt& v);

/// log10(v) for v > 0, accurate for arbitrarily large v.
double log10_of(const BigInt& v);

}  // namespace mixmax
