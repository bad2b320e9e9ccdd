// Exact integer characteristic polynomial and multiprecision root polishing.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "mixmax/error.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/spectral.hpp"

namespace mixmax {

namespace {

// ------------------------------------------------------ multimodular CRT

ResidueMatrix reduce_matrix(const DenseMatrix& a, const Modulus& m) {
  ResidueMatrix r(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) r(i, j) = reduce(a(i, j), m);
  return r;
}

// Bits needed for |c_k| <= e_k(row norms) <= prod(1 + |row_i|).
double coefficient_bound_bits(const DenseMatrix& a) {
  double bits = 0;
  for (std::size_t i = 0; i < a.n; ++i) {
    long double sq = 0;
    for (std::size_t j = 0; j < a.n; ++j) {
      const long double v = mpz_get_d(a(i, j).get_mpz_t());
      sq += v * v;
    }
    bits += static_cast<double>(std::log2(1.0L + std::sqrt(sq)));
  }
  return bits;
}

// --------------------------------------------------------- MPFR helpers

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct MpComplex {
  Mp re, im;
  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

constexpr mpfr_rnd_t R = MPFR_RNDN;

// Scratch registers reused across the inner loops.
struct Scratch {
  Mp t1, t2, t3, t4;
  explicit Scratch(mpfr_prec_t prec) : t1(prec), t2(prec), t3(prec), t4(prec) {}
};

// z <- z * w (complex), z must not alias w.
void cmul_inplace(MpComplex& z, const MpComplex& w, Scratch& s) {
  mpfr_mul(s.t1.get(), z.re.get(), w.re.get(), R);
  mpfr_mul(s.t2.get(), z.im.get(), w.im.get(), R);
  mpfr_mul(s.t3.get(), z.re.get(), w.im.get(), R);
  mpfr_mul(s.t4.get(), z.im.get(), w.re.get(), R);
  mpfr_sub(z.re.get(), s.t1.get(), s.t2.get(), R);
  mpfr_add(z.im.get(), s.t3.get(), s.t4.get(), R);
}

// out <- a / b.
void cdiv(MpComplex& out, const MpComplex& a, const MpComplex& b, Scratch& s) {
  mpfr_sqr(s.t1.get(), b.re.get(), R);
  mpfr_fma(s.t1.get(), b.im.get(), b.im.get(), s.t1.get(), R);  // |b|^2
  mpfr_mul(s.t2.get(), a.re.get(), b.re.get(), R);
  mpfr_fma(s.t2.get(), a.im.get(), b.im.get(), s.t2.get(), R);  // re(a conj b)
  mpfr_mul(s.t3.get(), a.im.get(), b.re.get(), R);
  mpfr_mul(s.t4.get(), a.re.get(), b.im.get(), R);
  mpfr_sub(s.t3.get(), s.t3.get(), s.t4.get(), R);               // im(a conj b)
  mpfr_div(out.re.get(), s.t2.get(), s.t1.get(), R);
  mpfr_div(out.im.get(), s.t3.get(), s.t1.get(), R);
}

// |z|^2 into out.
void cnorm(Mp& out, const MpComplex& z) {
  mpfr_sqr(out.get(), z.re.get(), R);
  mpfr_fma(out.get(), z.im.get(), z.im.get(), out.get(), R);
}

struct AberthResult {
  std::vector<MpComplex> roots;
  bool converged = false;
};

AberthResult aberth(const std::vector<Mp>& coef, std::vector<MpComplex> z, mpfr_prec_t prec,
                    std::size_t max_sweeps, long tol_exp) {
  const std::size_t n = z.size();
  Scratch s(prec);
  MpComplex p(prec), dp(prec), ratio(prec), sum(prec), diff(prec), inv(prec), w(prec), one(prec);
  Mp nz(prec), nw(prec), zero_check(prec);
  mpfr_set_ui(one.re.get(), 1, R);
  std::vector<bool> done(n, false);
  std::size_t remaining = n;

  for (std::size_t sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      // Horner for p and p'.
      mpfr_set(p.re.get(), coef[n].get(), R);
      mpfr_set_zero(p.im.get(), 1);
      mpfr_set_zero(dp.re.get(), 1);
      mpfr_set_zero(dp.im.get(), 1);
      for (std::size_t k = n; k-- > 0;) {
        cmul_inplace(dp, z[i], s);
        mpfr_add(dp.re.get(), dp.re.get(), p.re.get(), R);
        mpfr_add(dp.im.get(), dp.im.get(), p.im.get(), R);
        cmul_inplace(p, z[i], s);
        mpfr_add(p.re.get(), p.re.get(), coef[k].get(), R);
      }
      if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) {
        done[i] = true;
        --remaining;
        continue;
      }
      cnorm(nw, dp);
      if (mpfr_zero_p(nw.get())) {
        // Stationary point: nudge off it.
        mpfr_mul_2si(w.re.get(), z[i].re.get(), -20, R);
        mpfr_mul_2si(w.im.get(), z[i].re.get(), -21, R);
        mpfr_add_d(w.im.get(), w.im.get(), 1e-30, R);
        mpfr_sub(z[i].re.get(), z[i].re.get(), w.re.get(), R);
        mpfr_sub(z[i].im.get(), z[i].im.get(), w.im.get(), R);
        continue;
      }
      cdiv(ratio, p, dp, s);
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), R);
        mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), R);
        cnorm(s.t1, diff);
        if (mpfr_zero_p(s.t1.get())) continue;
        mpfr_div(inv.re.get(), diff.re.get(), s.t1.get(), R);
        mpfr_div(inv.im.get(), diff.im.get(), s.t1.get(), R);
        mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), R);
        mpfr_sub(sum.im.get(), sum.im.get(), inv.im.get(), R);
      }
      // w = ratio / (1 - ratio * sum)
      MpComplex denom = ratio;
      cmul_inplace(denom, sum, s);
      mpfr_ui_sub(denom.re.get(), 1, denom.re.get(), R);
      mpfr_neg(denom.im.get(), denom.im.get(), R);
      cnorm(nw, denom);
      if (mpfr_zero_p(nw.get())) {
        w = ratio;
      } else {
        cdiv(w, ratio, denom, s);
      }
      mpfr_sub(z[i].re.get(), z[i].re.get(), w.re.get(), R);
      mpfr_sub(z[i].im.get(), z[i].im.get(), w.im.get(), R);

      cnorm(nw, w);
      cnorm(nz, z[i]);
      mpfr_mul_2si(nz.get(), nz.get(), 2 * tol_exp, R);
      if (mpfr_lessequal_p(nw.get(), nz.get())) {
        done[i] = true;
        --remaining;
      }
    }
  }
  return AberthResult{std::move(z), remaining == 0};
}

}  // namespace

std::vector<BigInt> integer_char_poly(const OperatorSpec& spec) {
  const DenseMatrix a = materialize(spec);
  const std::size_t n = a.n;
  const double bound_bits = coefficient_bound_bits(a) + 2.0;  // sign and slack

  std::vector<BigInt> x(n + 1, BigInt(0));
  BigInt modulus = 1;
  std::uint64_t candidate = kMersenne61;
  while (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= bound_bits + 1) {
    while (!is_prime_u64(candidate)) candidate -= 2;
    const Modulus p(candidate);
    candidate -= 2;
    const PolyModP chi = char_poly_mod(reduce_matrix(a, p), p);
    const Residue minv = inv_mod(reduce(modulus, p), p);
    for (std::size_t k = 0; k <= n; ++k) {
      const Residue have = reduce(x[k], p);
      const Residue want = k < chi.coeffs.size() ? chi.coeffs[k] : Residue(0);
      const Residue t = mul_mod(sub_mod(want, have, p), minv, p);
      if (t.value) x[k] += modulus * from_u64(t.value);
    }
    modulus *= from_u64(p.value());
  }
  const BigInt half = modulus / 2;
  for (auto& c : x)
    if (c > half) c -= modulus;
  return x;
}

Spectrum polynomial_roots(std::span<const BigInt> coeffs, std::span<const Complex> initial) {
  if (coeffs.size() < 2 || sgn(coeffs.back()) == 0)
    throw InvalidArgument("polynomial_roots needs degree >= 1 and a nonzero leading term");
  const std::size_t n = coeffs.size() - 1;
  std::size_t max_bits = 1;
  for (const auto& c : coeffs) max_bits = std::max(max_bits, mpz_sizeinbase(c.get_mpz_t(), 2));

  // Root-modulus bound (Cauchy) for the fallback starting circle.
  long double cauchy = 0;
  {
    long exp_lead = 0;
    const double lead = std::fabs(mpz_get_d_2exp(&exp_lead, coeffs.back().get_mpz_t()));
    for (std::size_t k = 0; k < n; ++k) {
      long e = 0;
      const double v = std::fabs(mpz_get_d_2exp(&e, coeffs[k].get_mpz_t()));
      if (v == 0) continue;
      const long double ratio = std::log2(static_cast<long double>(v) / lead) + (e - exp_lead);
      cauchy = std::max(cauchy, ratio / static_cast<long double>(n - k));
    }
  }

  mpfr_prec_t prec = static_cast<mpfr_prec_t>(max_bits + 192);
  std::vector<Complex> start(initial.begin(), initial.end());
  if (start.size() != n) {
    start.clear();
    const long double radius = std::exp2(cauchy) + 1.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double angle = 2.0L * 3.14159265358979323846L * (k + 0.25L) / n + 0.4L;
      start.push_back(std::polar(radius * 0.5L, angle));
    }
  }
  // Break the real symmetry so real guesses can move into the complex plane.
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<long double> jitter(-1.0L, 1.0L);
  for (auto& z : start) {
    if (std::abs(z) == 0.0L) z = Complex(1e-3L, 1e-3L);
    z *= Complex(1.0L + 1e-6L * jitter(rng), 1e-6L * jitter(rng));
  }

  std::vector<MpComplex> roots;
  for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
    std::vector<Mp> coef;
    coef.reserve(n + 1);
    for (const auto& c : coeffs) {
      coef.emplace_back(prec);
      mpfr_set_z(coef.back().get(), c.get_mpz_t(), R);
    }
    std::vector<MpComplex> z;
    z.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      z.emplace_back(prec);
      if (roots.empty()) {
        mpfr_set_ld(z.back().re.get(), start[i].real(), R);
        mpfr_set_ld(z.back().im.get(), start[i].imag(), R);
      } else {
        mpfr_set(z.back().re.get(), roots[i].re.get(), R);
        mpfr_set(z.back().im.get(), roots[i].im.get(), R);
      }
    }
    AberthResult res = aberth(coef, std::move(z), prec, 4000, -110);
    roots = std::move(res.roots);
    if (res.converged) break;
    if (attempt == 3) throw ConvergenceFailure("Aberth iteration did not converge");
  }

  Spectrum sp;
  sp.n = n;
  sp.engine = SpectralEngine::ExactPolynomial;
  Mp norm(prec), tmp(prec);
  for (auto& r : roots) {
    long double re = mpfr_get_ld(r.re.get(), R);
    long double im = mpfr_get_ld(r.im.get(), R);
    // Imaginary residue of a real root sits at the working precision.
    mpfr_abs(norm.get(), r.im.get(), R);
    mpfr_abs(tmp.get(), r.re.get(), R);
    mpfr_mul_2si(tmp.get(), tmp.get(), -70, R);
    if (mpfr_lessequal_p(norm.get(), tmp.get())) im = 0;
    cnorm(norm, r);
    mpfr_log(tmp.get(), norm.get(), R);
    mpfr_mul_2si(tmp.get(), tmp.get(), -1, R);
    sp.eigenvalues.emplace_back(re, im);
    sp.log_modulus.push_back(mpfr_get_ld(tmp.get(), R));
  }
  return sp;
}

}  // namespace mixmax
