#include "mixmax/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mixmax/error.hpp"

namespace mixmax {

std::string engine_name(SpectralEngine e) {
  switch (e) {
    case SpectralEngine::Auto: return "auto";
    case SpectralEngine::DenseQR: return "dense-qr";
    case SpectralEngine::ExactPolynomial: return "exact-polynomial";
  }
  return "?";
}

namespace {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch balancing by powers of two (exact, eigenvalues unchanged).
template <typename Scalar>
void balance(Matrix<Scalar>& a) {
  const Scalar radix = 2;
  const Scalar sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      Scalar r = 0, c = 0;
      for (Eigen::Index j = 0; j < a.rows(); ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0 || r == 0) continue;
      Scalar g = r / radix, f = 1;
      const Scalar s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

template <typename Scalar>
Spectrum qr_spectrum(Matrix<Scalar> a) {
  balance(a);
  Eigen::EigenSolver<Matrix<Scalar>> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("QR iteration did not converge");
  Spectrum sp;
  sp.n = static_cast<std::size_t>(a.rows());
  sp.engine = SpectralEngine::DenseQR;
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Complex z(static_cast<long double>(ev[i].real()), static_cast<long double>(ev[i].imag()));
    sp.eigenvalues.push_back(z);
    sp.log_modulus.push_back(std::log(std::abs(z)));
  }
  return sp;
}

void finalize(Spectrum& sp) {
  std::vector<std::size_t> order(sp.eigenvalues.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (sp.log_modulus[x] != sp.log_modulus[y]) return sp.log_modulus[x] < sp.log_modulus[y];
    return std::arg(sp.eigenvalues[x]) < std::arg(sp.eigenvalues[y]);
  });
  Spectrum sorted = sp;
  sorted.d = 0;
  sorted.real_count = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.eigenvalues[k] = sp.eigenvalues[order[k]];
    sorted.log_modulus[k] = sp.log_modulus[order[k]];
    if (sorted.log_modulus[k] < 0) ++sorted.d;
    if (sorted.eigenvalues[k].imag() == 0) ++sorted.real_count;
  }
  sp = std::move(sorted);
}

long double log_det(const Spectrum& sp) {
  long double s = 0;
  for (long double l : sp.log_modulus) s += l;
  return s;
}

}  // namespace

Spectrum eigenvalues_of_matrix(std::span<const double> row_major, std::size_t n) {
  if (row_major.size() != n * n) throw InvalidArgument("matrix data must hold n*n values");
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = row_major[i * n + j];
  Spectrum sp = qr_spectrum(std::move(a));
  finalize(sp);
  return sp;
}

Spectrum eigenvalues(const OperatorSpec& spec, const SpectralOptions& options) {
  const std::size_t n = spec.n();
  if (n > options.max_dimension)
    throw InvalidArgument("N=" + std::to_string(n) + " exceeds the spectral cap of " +
                          std::to_string(options.max_dimension));
  std::vector<std::string> warnings;
  if (mpz_sizeinbase(spec.m().get_mpz_t(), 2) > 52)
    warnings.push_back("m >= 2^52: entries approach the floating-point mantissa limit");

  const DenseMatrix dense = materialize(spec);
  std::size_t max_bits = 0;
  for (const auto& e : dense.entries) max_bits = std::max(max_bits, mpz_sizeinbase(e.get_mpz_t(), 2));

  Spectrum qr;
  if (max_bits <= 53) {
    Matrix<double> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = mpz_get_d(dense(i, j).get_mpz_t());
    qr = qr_spectrum(std::move(a));
  } else {
    if (max_bits > 64)
      warnings.push_back("entries exceed 64 bits and are rounded in the QR starting spectrum");
    Matrix<long double> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long e = 0;
        const double mant = mpz_get_d_2exp(&e, dense(i, j).get_mpz_t());
        // Reassemble with the full 64-bit significand.
        BigInt hi = dense(i, j);
        long double v;
        if (mpz_sizeinbase(hi.get_mpz_t(), 2) <= 64) {
          const bool neg = sgn(hi) < 0;
          const std::uint64_t mag = to_u64(abs(hi));
          v = neg ? -static_cast<long double>(mag) : static_cast<long double>(mag);
        } else {
          v = std::ldexp(static_cast<long double>(mant), static_cast<int>(e));
        }
        a(i, j) = v;
      }
    qr = qr_spectrum(std::move(a));
  }

  Spectrum sp;
  const bool qr_ok = std::fabs(static_cast<double>(log_det(qr))) <=
                     options.det_check_per_n * static_cast<double>(n);
  if (options.engine == SpectralEngine::DenseQR ||
      (options.engine == SpectralEngine::Auto && qr_ok)) {
    sp = std::move(qr);
  } else {
    const std::vector<BigInt> chi = integer_char_poly(spec);
    sp = polynomial_roots(chi, qr.eigenvalues);
  }
  sp.warnings = std::move(warnings);
  finalize(sp);
  return sp;
}

EntropyReport entropy(const Spectrum& sp) {
  EntropyReport r;
  r.asymptotic = 2.0L * static_cast<long double>(sp.n) / std::numbers::pi_v<long double>;
  if (sp.eigenvalues.empty()) return r;
  r.min_unit_circle_gap = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < sp.n; ++i) {
    const long double l = sp.log_modulus[i];
    if (l > 0) r.entropy += l;
    if (l < 0) r.entropy_contracting -= l;
    r.min_unit_circle_gap = std::min(r.min_unit_circle_gap, std::fabs(std::exp(l) - 1.0L));
  }
  r.lambda_min = std::exp(sp.log_modulus.front());
  r.lambda_max = std::exp(sp.log_modulus.back());
  return r;
}

EntropyReport entropy_estimate(std::size_t n) {
  EntropyReport r;
  r.asymptotic = 2.0L * static_cast<long double>(n) / std::numbers::pi_v<long double>;
  r.entropy = r.asymptotic;
  r.entropy_contracting = r.asymptotic;
  r.estimate = true;
  return r;
}

CConditionVerdict check_c_condition(const Spectrum& sp, long double gap_tol,
                                    long double det_tol_per_n) {
  CConditionVerdict v;
  v.min_gap = std::numeric_limits<long double>::infinity();
  for (long double l : sp.log_modulus) v.min_gap = std::min(v.min_gap, std::fabs(std::exp(l) - 1.0L));
  v.log_det = log_det(sp);
  v.pass = v.min_gap > gap_tol &&
           std::fabs(v.log_det) <= det_tol_per_n * static_cast<long double>(std::max<std::size_t>(sp.n, 1));
  return v;
}

double limiting_curve(double phi) {
  const double c = std::cos(phi / 2.0);
  return 4.0 * c * c;
}

std::complex<double> approx_eigenvalue(long j, std::size_t n) {
  const long half = static_cast<long>(n / 2);
  if (n == 0 || j < -half || j > half) throw InvalidArgument("approx_eigenvalue needs |j| <= N/2");
  const double nn = static_cast<double>(n);
  const double c = std::cos(static_cast<double>(j) * std::numbers::pi / (2.0 * nn));
  return std::polar(1.0 / (4.0 * c * c), std::numbers::pi * static_cast<double>(j) / nn);
}

ApproxComparison compare_with_approximation(const Spectrum& sp, double max_modulus) {
  ApproxComparison out;
  const long half = static_cast<long>(sp.n / 2);
  const double nn = static_cast<double>(sp.n);
  for (std::size_t i = 0; i < sp.n; ++i) {
    const double modulus = std::exp(static_cast<double>(sp.log_modulus[i]));
    if (modulus >= max_modulus) continue;
    const double phase = static_cast<double>(std::arg(sp.eigenvalues[i]));
    long j = std::lround(phase * nn / std::numbers::pi);
    j = std::clamp(j, -half, half);
    const double ref = std::abs(approx_eigenvalue(j, sp.n));
    const double err = std::fabs(modulus - ref) / ref;
    ++out.compared;
    if (err > out.max_relative_error) {
      out.max_relative_error = err;
      out.worst_eigenvalue = sp.eigenvalues[i];
      out.worst_j = j;
    }
  }
  return out;
}

double leaf_deviation(const Spectrum& sp, double min_radius) {
  double worst = 0;
  for (std::size_t i = 0; i < sp.n; ++i) {
    const Complex& z = sp.eigenvalues[i];
    if (z.imag() == 0 || sp.log_modulus[i] >= 0) continue;
    const std::complex<double> w = 1.0 / std::complex<double>(static_cast<double>(z.real()),
                                                              static_cast<double>(z.imag()));
    const double c = limiting_curve(std::arg(w));
    if (c < min_radius || c == 0) continue;
    worst = std::max(worst, std::fabs(std::abs(w) - c) / c);
  }
  return worst;
}

SpectrumReport spectrum_report(const OperatorSpec& spec, const SpectralOptions& options) {
  Spectrum sp = eigenvalues(spec, options);
  EntropyReport e = entropy(sp);
  CConditionVerdict v = check_c_condition(sp);
  return SpectrumReport{spec, std::move(sp), e, v};
}

namespace {

nlohmann::json point(const Complex& z, long double log_modulus) {
  return {{"re", static_cast<double>(z.real())},
          {"im", static_cast<double>(z.imag())},
          {"modulus", static_cast<double>(std::exp(log_modulus))},
          {"log_modulus", static_cast<double>(log_modulus)},
          {"phase", static_cast<double>(std::arg(z))},
          {"is_expanding", log_modulus > 0}};
}

}  // namespace

nlohmann::json to_json(const EntropyReport& e) {
  return {{"entropy", static_cast<double>(e.entropy)},
          {"entropy_contracting", static_cast<double>(e.entropy_contracting)},
          {"asymptotic", static_cast<double>(e.asymptotic)},
          {"lambda_min", static_cast<double>(e.lambda_min)},
          {"lambda_max", static_cast<double>(e.lambda_max)},
          {"min_unit_circle_gap", static_cast<double>(e.min_unit_circle_gap)},
          {"estimate", e.estimate}};
}

nlohmann::json to_json(const SpectrumReport& r, std::size_t curve_samples) {
  nlohmann::json direct = nlohmann::json::array(), inverse = nlohmann::json::array();
  const Spectrum& sp = r.spectrum;
  for (std::size_t i = 0; i < sp.n; ++i) {
    direct.push_back(point(sp.eigenvalues[i], sp.log_modulus[i]));
    inverse.push_back(point(1.0L / sp.eigenvalues[i], -sp.log_modulus[i]));
  }
  nlohmann::json curve = nlohmann::json::array();
  for (std::size_t k = 1; k <= curve_samples; ++k) {
    const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                               static_cast<double>(curve_samples);
    curve.push_back({{"phi", phi}, {"r", limiting_curve(phi)}});
  }
  return {{"schema", "mixmax.spectrum/1"},
          {"spec", to_json(r.spec)},
          {"engine", engine_name(sp.engine)},
          {"N", sp.n},
          {"d", sp.d},
          {"real_count", sp.real_count},
          {"warnings", sp.warnings},
          {"eigenvalues", direct},
          {"inverse_eigenvalues", inverse},
          {"leaf_curve", curve},
          {"entropy", to_json(r.entropy)},
          {"c_condition",
           {{"pass", r.c_condition.pass},
            {"min_gap", static_cast<double>(r.c_condition.min_gap)},
            {"log_det", static_cast<double>(r.c_condition.log_det)}}}};
}

std::string to_csv(const Spectrum& sp, bool inverse) {
  std::ostringstream out;
  out.precision(17);
  out << "re,im,modulus,phase,is_expanding\n";
  for (std::size_t i = 0; i < sp.n; ++i) {
    const Complex z = inverse ? 1.0L / sp.eigenvalues[i] : sp.eigenvalues[i];
    const long double l = inverse ? -sp.log_modulus[i] : sp.log_modulus[i];
    out << static_cast<double>(z.real()) << ',' << static_cast<double>(z.imag()) << ','
        << static_cast<double>(std::exp(l)) << ',' << static_cast<double>(std::arg(z)) << ','
        << (l > 0 ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace mixmax
