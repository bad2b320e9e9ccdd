#pragma once

// Period theory over GF(p^N): residue matrices, characteristic polynomials
// mod p, irreducibility, big-exponent powers, and the maximal-period
// certificate with its brute-force orbit oracle.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mixmax/bigint.hpp"
#include "mixmax/field_arith.hpp"
#include "mixmax/operators.hpp"

namespace mixmax {

/// Square matrix over GF(p), row-major.
class ResidueMatrix {
 public:
  ResidueMatrix() = default;
  explicit ResidueMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static ResidueMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  bool is_identity() const;
  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Residue> data_;
};

/// A reduced entrywise mod p (through OperatorSpec::entry).
ResidueMatrix residue_matrix(const OperatorSpec& spec, const Modulus& m);

ResidueMatrix multiply(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m);
std::vector<Residue> apply(const ResidueMatrix& a, std::span<const Residue> v, const Modulus& m);
Residue determinant(ResidueMatrix a, const Modulus& m);

ResidueMatrix matrix_pow_mod(const ResidueMatrix& a, const BigInt& e, const Modulus& m);
ResidueMatrix matrix_pow_mod(const OperatorSpec& spec, const BigInt& e, const Modulus& m);

/// Polynomial over GF(p), coefficients from x^0 upwards, no trailing zeros
/// (the zero polynomial is empty).
struct PolyModP {
  std::vector<Residue> coeffs;

  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs.size()) - 1; }
  bool is_monic() const { return !coeffs.empty() && coeffs.back().value == 1; }
  friend bool operator==(const PolyModP&, const PolyModP&) = default;
};

PolyModP poly_trim(std::vector<Residue> c);
PolyModP poly_mul(const PolyModP& a, const PolyModP& b, const Modulus& m);
PolyModP poly_sub(const PolyModP& a, const PolyModP& b, const Modulus& m);
PolyModP poly_rem(const PolyModP& a, const PolyModP& mod, const Modulus& m);
PolyModP poly_gcd(PolyModP a, PolyModP b, const Modulus& m);
/// base^e mod `mod`.
PolyModP poly_pow_mod(const PolyModP& base, const BigInt& e, const PolyModP& mod,
                      const Modulus& m);
/// P(M) over GF(p) (Horner in matrices).
ResidueMatrix poly_eval_matrix(const PolyModP& p, const ResidueMatrix& a, const Modulus& m);

enum class CharPolyMethod {
  Hessenberg,     ///< similarity to Hessenberg form, O(N^3), any p
  Interpolation,  ///< det(x_k I - A) at N+1 points + Lagrange, needs p > N
};

/// det(xI - A) mod p, monic of degree N.
PolyModP char_poly_mod(const ResidueMatrix& a, const Modulus& m,
                       CharPolyMethod method = CharPolyMethod::Hessenberg);
PolyModP char_poly_mod(const OperatorSpec& spec, const Modulus& m,
                       CharPolyMethod method = CharPolyMethod::Hessenberg);

/// Rabin's test: x^(p^N) == x mod P and gcd(x^(p^(N/r)) - x, P) == 1 for prime r | N.
bool is_irreducible(const PolyModP& p, const Modulus& m);

/// (p^N - 1) / (p - 1).
BigInt q_of(std::uint64_t p, std::size_t n);

struct FactorizationOfQ {
  enum class Provenance { Computed, Supplied };
  std::vector<std::pair<BigInt, unsigned>> factors;
  Provenance provenance = Provenance::Computed;

  BigInt product() const;
};

/// Trial division plus Pollard rho; refuses q above 10^18.
FactorizationOfQ factorize(const BigInt& q);

/// Parses "prime multiplicity" lines (blank lines and '#' comments ignored) and checks
/// the product against q. Throws BadFactorization on mismatch or composite entries.
FactorizationOfQ parse_factorization(std::string_view text, const BigInt& q);

struct PeriodCertificate {
  BigInt q;
  bool irreducible = false;
  bool cond1 = false;
  bool cond2_evaluated = false;
  std::vector<std::pair<BigInt, bool>> cond2;
  bool maximal = false;
  /// Set when maximal: every nonzero seed has period q.
  bool seed_independent = false;
};

/// Conditions 1 and 2 plus irreducibility. Without a factorization only
/// condition 1 is evaluated and the certificate cannot be maximal.
PeriodCertificate certify_max_period(const OperatorSpec& spec, const Modulus& m,
                                     const FactorizationOfQ* factors);
inline PeriodCertificate certify_max_period(const OperatorSpec& spec, const Modulus& m,
                                            const FactorizationOfQ& factors) {
  return certify_max_period(spec, m, &factors);
}

nlohmann::json to_json(const PeriodCertificate& c);

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// Smallest t >= 1 with A^t a == a, by iteration. Throws StateSpaceTooLarge when
/// p^N > 10^7 and AllZeroSeed for a zero seed.
BigInt brute_force_period(const OperatorSpec& spec, const Modulus& m,
                          std::span<const std::uint64_t> seed);

/// Lengths of all orbits of A on the nonzero vectors of GF(p)^N (same bound).
std::vector<std::uint64_t> enumerate_orbits(const OperatorSpec& spec, const Modulus& m);

/// log10 of e^(q h) / q, evaluated in log space.
double density_log10(const BigInt& q, double h);

}  // namespace mixmax
