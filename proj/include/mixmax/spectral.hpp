#pragma once

// Spectrum, Kolmogorov entropy and the hyperbolicity (C-) condition.
//
// Two numerical routes compute eigenvalues:
//   DenseQR          balancing + Hessenberg + shifted QR on the floating-point
//                    matrix (Eigen, long double).
//   ExactPolynomial  the integer characteristic polynomial, reconstructed
//                    exactly from residues mod many 61-bit primes, whose roots
//                    are polished by Aberth iteration in multiprecision.
// Auto runs DenseQR first and switches to ExactPolynomial when the product of
// the computed eigenvalues drifts from det A = 1, which is what happens when
// m or s are large and the contracting eigenvalues drown in rounding error.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "mixmax/bigint.hpp"
#include "mixmax/operators.hpp"

namespace mixmax {

using Complex = std::complex<long double>;

enum class SpectralEngine { Auto, DenseQR, ExactPolynomial };

std::string engine_name(SpectralEngine e);

struct SpectralOptions {
  std::size_t max_dimension = 4096;
  SpectralEngine engine = SpectralEngine::Auto;
  /// Auto accepts the QR result when |sum ln|lambda|| <= det_check_per_n * N.
  double det_check_per_n = 1e-9;
};

struct Spectrum {
  std::size_t n = 0;
  /// Sorted by ascending modulus.
  std::vector<Complex> eigenvalues;
  /// ln|lambda_i|, kept separately so moduli far outside double range stay exact.
  std::vector<long double> log_modulus;
  /// Count with modulus < 1.
  std::size_t d = 0;
  std::size_t real_count = 0;
  SpectralEngine engine = SpectralEngine::DenseQR;
  std::vector<std::string> warnings;
};

/// Throws InvalidArgument above max_dimension, ConvergenceFailure when a solver stalls.
/// Adds a precision warning when m >= 2^52.
Spectrum eigenvalues(const OperatorSpec& spec, const SpectralOptions& options = {});

/// Dense QR spectrum of an arbitrary real matrix (row-major, n x n).
Spectrum eigenvalues_of_matrix(std::span<const double> row_major, std::size_t n);

/// Exact integer coefficients of det(xI - A), constant term first.
std::vector<BigInt> integer_char_poly(const OperatorSpec& spec);

/// Roots of an integer polynomial (constant term first, nonzero leading term).
Spectrum polynomial_roots(std::span<const BigInt> coeffs, std::span<const Complex> initial = {});

struct EntropyReport {
  long double entropy = 0;              // sum of ln|lambda| over |lambda| > 1
  long double entropy_contracting = 0;  // sum of -ln|lambda| over |lambda| < 1
  long double asymptotic = 0;           // 2N/pi
  long double lambda_min = 0;
  long double lambda_max = 0;
  long double min_unit_circle_gap = 0;
  bool estimate = false;
};

EntropyReport entropy(const Spectrum& sp);
/// 2N/pi stand-in for dimensions beyond the spectral cap; flagged as an estimate.
EntropyReport entropy_estimate(std::size_t n);

struct CConditionVerdict {
  bool pass = false;
  long double min_gap = 0;   // min | |lambda| - 1 |
  long double log_det = 0;   // sum ln|lambda|
};

/// Passes iff every modulus stays more than gap_tol away from 1 and
/// |sum ln|lambda|| <= det_tol_per_n * N.
CConditionVerdict check_c_condition(const Spectrum& sp, long double gap_tol = 1e-6L,
                                    long double det_tol_per_n = 1e-6L);

/// Limiting leaf r(phi) = 4 cos^2(phi/2) of the inverse spectrum.
double limiting_curve(double phi);

/// exp(i pi j / N) / (4 cos^2(j pi / 2N)) for |j| <= N/2.
std::complex<double> approx_eigenvalue(long j, std::size_t n);

struct ApproxComparison {
  std::size_t compared = 0;
  double max_relative_error = 0;
  Complex worst_eigenvalue{};
  long worst_j = 0;
};

/// Pairs each eigenvalue with |lambda| < max_modulus to the index j nearest in
/// phase (clamped to |j| <= N/2) and measures the relative modulus error.
ApproxComparison compare_with_approximation(const Spectrum& sp, double max_modulus = 0.9);

/// Largest relative radial distance from the leaf curve of 1/lambda, taken over
/// non-real contracting eigenvalues where the curve radius is at least min_radius.
double leaf_deviation(const Spectrum& sp, double min_radius = 0.0);

struct SpectrumReport {
  OperatorSpec spec;
  Spectrum spectrum;
  EntropyReport entropy;
  CConditionVerdict c_condition;
};

SpectrumReport spectrum_report(const OperatorSpec& spec, const SpectralOptions& options = {});

/// Plot-ready JSON: eigenvalues of A and of A^-1, sampled leaf curve, entropy, gaps.
nlohmann::json to_json(const SpectrumReport& r, std::size_t curve_samples = 360);
nlohmann::json to_json(const EntropyReport& e);
/// CSV with header "re,im,modulus,phase,is_expanding"; inverse=true lists 1/lambda.
std::string to_csv(const Spectrum& sp, bool inverse = false);

}  // namespace mixmax
