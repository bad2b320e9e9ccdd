#include "mixmax/bigint.hpp"

#include <cmath>
#include <string>

#include "mixmax/error.hpp"

namespace mixmax {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_plain(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) throw InvalidArgument("not a decimal integer: '" + std::string(text) + "'");
  BigInt v(std::string(body), 10);
  return negative ? BigInt(-v) : v;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (text.size() > 2 && text[0] == '2' && text[1] == '^') {
    std::string_view rest = text.substr(2);
    std::size_t op = rest.find_first_of("+-");
    std::string_view exp_part = rest.substr(0, op);
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw InvalidArgument("bad exponent in '" + std::string(text) + "'");
    unsigned long k = std::stoul(std::string(exp_part));
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, k);
    if (op != std::string_view::npos) {
      BigInt c = parse_plain(rest.substr(op + 1));
      if (rest[op] == '+') v += c; else v -= c;
    }
    return v;
  }
  return parse_plain(text);
}

std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
    throw RangeError("integer does not fit in 64 unsigned bits: " + to_decimal(v));
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::size_t decimal_digits(const BigInt& v) {
  if (sgn(v) == 0) return 1;
  // mpz_sizeinbase may overshoot by one; settle it with a power of ten.
  std::size_t guess = mpz_sizeinbase(v.get_mpz_t(), 10);
  BigInt a = abs(v);
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, guess - 1);
  return a < bound ? guess - 1 : guess;
}

double log10_of(const BigInt& v) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
}

}  // namespace mixmax
