#pragma once

// The C-operator families.
//
//   TwoParam   A(N,s):      below-diagonal bands 3, 4, ..., N
//   ThreeParam A(N,s,m):    bands m+2, 2m+2, ..., (N-2)m+2
//   FourParam  A(N,s,m,b):  bands 3m+b, 4m+b, ..., Nm+b
//
// Row 1 and column 1 are all ones, the diagonal below row 1 is 2, entries
// above the diagonal are 1, and s is added at position (3,2). Entries are
// produced by a closed form so the matrix never has to be stored.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mixmax/bigint.hpp"
#include "mixmax/field_arith.hpp"

namespace mixmax {

enum class Family { TwoParam, ThreeParam, FourParam };

std::string family_name(Family f);     // "two" / "three" / "four"
Family parse_family(std::string_view name);

class OperatorSpec {
 public:
  static OperatorSpec two_param(std::size_t n, BigInt s);
  static OperatorSpec three_param(std::size_t n, BigInt s, BigInt m);
  static OperatorSpec four_param(std::size_t n, BigInt s, BigInt m, BigInt b);

  /// Validating constructor. b is ignored (stored as 0) unless family is FourParam;
  /// m is forced to 1 for TwoParam.
  OperatorSpec(Family family, std::size_t n, BigInt s, BigInt m = 1, BigInt b = 0);

  Family family() const { return family_; }
  std::size_t n() const { return n_; }
  const BigInt& s() const { return s_; }
  const BigInt& m() const { return m_; }
  const BigInt& b() const { return b_; }

  /// Records that m was given in the form 2^k+1; validate() checks the claim.
  OperatorSpec& claim_special_m(unsigned k) {
    claimed_shift_ = k;
    return *this;
  }
  std::optional<unsigned> claimed_shift() const { return claimed_shift_; }

  /// Closed-form entry A_ij, 1-based. Throws RangeError outside 1..N.
  BigInt entry(std::size_t i, std::size_t j) const;

  friend bool operator==(const OperatorSpec& a, const OperatorSpec& b) {
    return a.family_ == b.family_ && a.n_ == b.n_ && a.s_ == b.s_ && a.m_ == b.m_ &&
           a.b_ == b.b_;
  }

 private:
  Family family_;
  std::size_t n_;
  BigInt s_;
  BigInt m_;
  BigInt b_;
  std::optional<unsigned> claimed_shift_;
};

/// N x N integer matrix, row-major.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<BigInt> entries;

  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

DenseMatrix materialize(const OperatorSpec& spec);

/// Determinant of A reduced mod p, by Gaussian elimination over GF(p).
Residue det_mod(const OperatorSpec& spec, const Modulus& m);

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity;
  std::string message;
};

/// Warns when N*m >= p; errors when a claimed 2^k+1 form of m is false.
std::vector<Diagnostic> validate(const OperatorSpec& spec, const Modulus& m);

/// JSON object {family, N, s, m, b}; s, m, b as decimal strings.
nlohmann::json to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const nlohmann::json& j);

}  // namespace mixmax
