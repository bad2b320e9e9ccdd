#pragma once

// The MIXMAX generator: a(k+1) = A a(k) mod p, advanced in O(N) per step.
//
// Output is the state vector scanned in order: the first N draws after seeding
// are the seed components, draw N+1 is component 1 of A*seed, and so on.
// Residues span [0, p-1]; for p = 2^61-1 that is [0, 2^61-2], not the full
// 64-bit range.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mixmax/bigint.hpp"
#include "mixmax/field_arith.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/operators.hpp"

namespace mixmax {

inline constexpr unsigned kDefaultStreamSpacingExp = 512;

class GeneratorState {
 public:
  /// Throws RangeError for non-canonical residues or a bad cursor, AllZeroSeed for
  /// an all-zero vector, InvalidArgument when the length differs from N.
  GeneratorState(OperatorSpec spec, Modulus modulus, std::vector<Residue> a,
                 std::uint64_t counter = 0, std::uint32_t cursor = 1);

  const OperatorSpec& spec() const { return spec_; }
  const Modulus& modulus() const { return modulus_; }
  std::span<const Residue> vector() const { return a_; }
  std::uint64_t counter() const { return counter_; }
  /// 1-based index of the component returned by the next draw.
  std::uint32_t cursor() const { return cursor_; }

  /// One iteration via the row-difference recurrence.
  void step();
  /// One iteration as a full N^2 matrix-vector product; the oracle for step().
  void step_naive();

  std::uint64_t next_residue();
  /// next_residue() / p, always strictly below 1.
  double next_unit();

  /// Advances by k iterations using x^k mod chi_A(x) (Cayley-Hamilton). The
  /// counter wraps modulo 2^64; the cursor is preserved.
  void skip(const BigInt& k);
  /// Same result through the dense power A^k mod p. O(N^3 log k).
  void skip_by_matrix(const BigInt& k);

  /// skip(stream_id * 2^spacing_exp) applied to a copy.
  GeneratorState derive_stream(std::uint64_t stream_id,
                               unsigned spacing_exp = kDefaultStreamSpacingExp) const;

  /// Bit-exact state blob ("MXST", version 1).
  std::vector<std::uint8_t> save() const;
  /// Throws FormatError on malformed blobs and RangeError on non-canonical content.
  static GeneratorState load(std::span<const std::uint8_t> blob);

  friend bool operator==(const GeneratorState& x, const GeneratorState& y) {
    return x.spec_ == y.spec_ && x.modulus_ == y.modulus_ && x.a_ == y.a_ &&
           x.counter_ == y.counter_ && x.cursor_ == y.cursor_;
  }

 private:
  struct Kernel {
    Residue m;
    Residue s;
    Residue diag_step;   // 3m + b - 2, FourParam only
    int shift = -1;      // k when m == 2^k+1 < p
    Family family;
  };

  void advance(std::span<Residue> v) const;
  Residue times_m(Residue x) const {
    return kernel_.shift >= 0 ? mul_special_unchecked(x, static_cast<unsigned>(kernel_.shift), modulus_)
                              : mul_mod(x, kernel_.m, modulus_);
  }

  OperatorSpec spec_;
  Modulus modulus_;
  std::vector<Residue> a_;
  std::uint64_t counter_;
  std::uint32_t cursor_;
  Kernel kernel_;
  std::shared_ptr<const ResidueMatrix> dense_;  // built on first step_naive()
};

/// Components reduced mod p; counter 0, cursor 1. Throws AllZeroSeed.
GeneratorState seed_from_vector(const OperatorSpec& spec, const Modulus& modulus,
                                std::span<const std::uint64_t> v);

/// Expands w with the SplitMix64 sequence (increment 0x9E3779B97F4A7C15, multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB, shifts 30/27/31), one output per
/// component reduced mod p. An all-zero result is replaced by a_1 = 1.
GeneratorState seed_from_word(const OperatorSpec& spec, const Modulus& modulus, std::uint64_t w);

/// x / p rounded to nearest, clamped below 1.
double to_unit(Residue x, const Modulus& modulus);

}  // namespace mixmax
