#include "mixmax/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "mixmax/error.hpp"

namespace mixmax {

// ---------------------------------------------------------------- matrices

ResidueMatrix ResidueMatrix::identity(std::size_t n) {
  ResidueMatrix id(n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = Residue(1);
  return id;
}

bool ResidueMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j).value != (i == j ? 1u : 0u)) return false;
  return true;
}

ResidueMatrix residue_matrix(const OperatorSpec& spec, const Modulus& m) {
  const std::size_t n = spec.n();
  ResidueMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = reduce(spec.entry(i + 1, j + 1), m);
  return a;
}

ResidueMatrix multiply(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m) {
  const std::size_t n = a.size();
  ResidueMatrix c(n);
  std::vector<u128> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t aik = a(i, k).value;
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        // Each term is below 2^122; reduce before the accumulator can overflow.
        acc[j] += static_cast<u128>(aik) * brow[j].value;
        if (acc[j] >> 125) acc[j] = m.reduce(acc[j]);
      }
    }
    for (std::size_t j = 0; j < n; ++j) c(i, j) = Residue(m.reduce(acc[j]));
  }
  return c;
}

std::vector<Residue> apply(const ResidueMatrix& a, std::span<const Residue> v, const Modulus& m) {
  const std::size_t n = a.size();
  std::vector<Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Residue s(0);
    auto row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) s = add_mod(s, mul_mod(row[j], v[j], m), m);
    out[i] = s;
  }
  return out;
}

Residue determinant(ResidueMatrix a, const Modulus& m) {
  const std::size_t n = a.size();
  Residue det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).value == 0) ++piv;
    if (piv == n) return Residue(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = neg_mod(det, m);
    }
    det = mul_mod(det, a(col, col), m);
    const Residue inv = inv_mod(a(col, col), m);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).value == 0) continue;
      const Residue f = mul_mod(a(i, col), inv, m);
      for (std::size_t j = col; j < n; ++j)
        a(i, j) = sub_mod(a(i, j), mul_mod(f, a(col, j), m), m);
    }
  }
  return det;
}

ResidueMatrix matrix_pow_mod(const ResidueMatrix& a, const BigInt& e, const Modulus& m) {
  if (sgn(e) < 0) throw InvalidArgument("matrix_pow_mod: negative exponent");
  ResidueMatrix r = ResidueMatrix::identity(a.size());
  const std::size_t bits = sgn(e) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = multiply(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = multiply(r, a, m);
  }
  return r;
}

ResidueMatrix matrix_pow_mod(const OperatorSpec& spec, const BigInt& e, const Modulus& m) {
  return matrix_pow_mod(residue_matrix(spec, m), e, m);
}

// ------------------------------------------------------------- polynomials

PolyModP poly_trim(std::vector<Residue> c) {
  while (!c.empty() && c.back().value == 0) c.pop_back();
  return PolyModP{std::move(c)};
}

PolyModP poly_mul(const PolyModP& a, const PolyModP& b, const Modulus& m) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  std::vector<u128> acc(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const std::uint64_t ai = a.coeffs[i].value;
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      acc[i + j] += static_cast<u128>(ai) * b.coeffs[j].value;
      if (acc[i + j] >> 125) acc[i + j] = m.reduce(acc[i + j]);
    }
  }
  std::vector<Residue> c(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) c[k] = Residue(m.reduce(acc[k]));
  return poly_trim(std::move(c));
}

PolyModP poly_sub(const PolyModP& a, const PolyModP& b, const Modulus& m) {
  std::vector<Residue> c(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Residue x = i < a.coeffs.size() ? a.coeffs[i] : Residue(0);
    Residue y = i < b.coeffs.size() ? b.coeffs[i] : Residue(0);
    c[i] = sub_mod(x, y, m);
  }
  return poly_trim(std::move(c));
}

PolyModP poly_rem(const PolyModP& a, const PolyModP& mod, const Modulus& m) {
  if (mod.coeffs.empty()) throw InvalidArgument("polynomial division by zero");
  if (a.coeffs.size() < mod.coeffs.size()) return a;
  std::vector<Residue> r = a.coeffs;
  const std::size_t dm = mod.coeffs.size() - 1;
  const Residue lead_inv = inv_mod(mod.coeffs.back(), m);
  for (std::size_t k = r.size(); k-- > dm;) {
    if (r[k].value == 0) continue;
    const Residue f = mul_mod(r[k], lead_inv, m);
    const std::size_t shift = k - dm;
    for (std::size_t j = 0; j <= dm; ++j)
      r[shift + j] = sub_mod(r[shift + j], mul_mod(f, mod.coeffs[j], m), m);
  }
  r.resize(dm);
  return poly_trim(std::move(r));
}

PolyModP poly_gcd(PolyModP a, PolyModP b, const Modulus& m) {
  while (!b.coeffs.empty()) {
    PolyModP r = poly_rem(a, b, m);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.coeffs.empty()) {
    const Residue inv = inv_mod(a.coeffs.back(), m);
    for (auto& c : a.coeffs) c = mul_mod(c, inv, m);
  }
  return a;
}

PolyModP poly_pow_mod(const PolyModP& base, const BigInt& e, const PolyModP& mod,
                      const Modulus& m) {
  PolyModP r = poly_rem(PolyModP{{Residue(1)}}, mod, m);
  const PolyModP b = poly_rem(base, mod, m);
  const std::size_t bits = sgn(e) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = poly_rem(poly_mul(r, r, m), mod, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_rem(poly_mul(r, b, m), mod, m);
  }
  return r;
}

ResidueMatrix poly_eval_matrix(const PolyModP& p, const ResidueMatrix& a, const Modulus& m) {
  const std::size_t n = a.size();
  ResidueMatrix acc(n);
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    acc = multiply(acc, a, m);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = add_mod(acc(i, i), p.coeffs[k], m);
  }
  return acc;
}

// ------------------------------------------------------- characteristic poly

namespace {

PolyModP char_poly_hessenberg(ResidueMatrix h, const Modulus& m) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg form by elementary similarity transforms.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t piv_row = col + 1;
    std::size_t i = piv_row;
    while (i < n && h(i, col).value == 0) ++i;
    if (i == n) continue;
    if (i != piv_row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(piv_row, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, piv_row));
    }
    const Residue inv = inv_mod(h(piv_row, col), m);
    for (std::size_t r = piv_row + 1; r < n; ++r) {
      if (h(r, col).value == 0) continue;
      const Residue u = mul_mod(h(r, col), inv, m);
      for (std::size_t j = 0; j < n; ++j) h(r, j) = sub_mod(h(r, j), mul_mod(u, h(piv_row, j), m), m);
      for (std::size_t j = 0; j < n; ++j) h(j, piv_row) = add_mod(h(j, piv_row), mul_mod(u, h(j, r), m), m);
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod_{j} h_{j,j-1}) p_{k-i-1}
  std::vector<std::vector<Residue>> polys(n + 1);
  polys[0] = {Residue(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Residue> pk(k + 1, Residue(0));
    const auto& prev = polys[k - 1];
    const Residue hkk = h(k - 1, k - 1);
    for (std::size_t d = 0; d < prev.size(); ++d) {
      pk[d + 1] = add_mod(pk[d + 1], prev[d], m);
      pk[d] = sub_mod(pk[d], mul_mod(hkk, prev[d], m), m);
    }
    Residue t(1);
    for (std::size_t i = 1; i < k; ++i) {
      t = mul_mod(t, h(k - i, k - i - 1), m);
      if (t.value == 0) break;
      const Residue c = mul_mod(h(k - i - 1, k - 1), t, m);
      if (c.value == 0) continue;
      const auto& q = polys[k - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) pk[d] = sub_mod(pk[d], mul_mod(c, q[d], m), m);
    }
    polys[k] = std::move(pk);
  }
  return PolyModP{std::move(polys[n])};
}

PolyModP char_poly_interpolated(const ResidueMatrix& a, const Modulus& m) {
  const std::size_t n = a.size();
  if (m.value() <= n)
    throw ModulusTooSmall("interpolation needs p > N (p=" + std::to_string(m.value()) +
                          ", N=" + std::to_string(n) + ")");
  std::vector<Residue> xs(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    xs[k] = Residue(k);
    ResidueMatrix t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = neg_mod(a(i, j), m);
    for (std::size_t i = 0; i < n; ++i) t(i, i) = add_mod(t(i, i), xs[k], m);
    ys[k] = determinant(std::move(t), m);
  }
  // Newton divided differences, then expand the Newton form.
  std::vector<Residue> dd = ys;
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t k = n; k >= level; --k) {
      const Residue num = sub_mod(dd[k], dd[k - 1], m);
      const Residue den = sub_mod(xs[k], xs[k - level], m);
      dd[k] = mul_mod(num, inv_mod(den, m), m);
    }
  std::vector<Residue> coef{dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    // coef <- coef * (x - xs[k]) + dd[k]
    std::vector<Residue> next(coef.size() + 1, Residue(0));
    for (std::size_t d = 0; d < coef.size(); ++d) {
      next[d + 1] = add_mod(next[d + 1], coef[d], m);
      next[d] = sub_mod(next[d], mul_mod(xs[k], coef[d], m), m);
    }
    next[0] = add_mod(next[0], dd[k], m);
    coef = std::move(next);
  }
  return PolyModP{std::move(coef)};
}

std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PolyModP char_poly_mod(const ResidueMatrix& a, const Modulus& m, CharPolyMethod method) {
  if (a.size() == 0) return PolyModP{{Residue(1)}};
  return method == CharPolyMethod::Hessenberg ? char_poly_hessenberg(a, m)
                                              : char_poly_interpolated(a, m);
}

PolyModP char_poly_mod(const OperatorSpec& spec, const Modulus& m, CharPolyMethod method) {
  return char_poly_mod(residue_matrix(spec, m), m, method);
}

bool is_irreducible(const PolyModP& p, const Modulus& m) {
  const std::ptrdiff_t deg = p.degree();
  if (deg < 1) return false;
  if (deg == 1) return true;
  const std::size_t n = static_cast<std::size_t>(deg);
  const PolyModP x = poly_rem(PolyModP{{Residue(0), Residue(1)}}, p, m);

  // Frobenius matrix: row i holds x^(i p) mod P, so g(x)^p = sum_i g_i x^(i p).
  const PolyModP xp = poly_pow_mod(x, from_u64(m.value()), p, m);
  std::vector<std::vector<Residue>> frob(n, std::vector<Residue>(n, Residue(0)));
  PolyModP cur{{Residue(1)}};
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(cur.coeffs.begin(), cur.coeffs.end(), frob[i].begin());
    cur = poly_rem(poly_mul(cur, xp, m), p, m);
  }
  auto frobenius = [&](const PolyModP& g) {
    std::vector<u128> acc(n, 0);
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
      const std::uint64_t gi = g.coeffs[i].value;
      if (gi == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        acc[j] += static_cast<u128>(gi) * frob[i][j].value;
        if (acc[j] >> 125) acc[j] = m.reduce(acc[j]);
      }
    }
    std::vector<Residue> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = Residue(m.reduce(acc[j]));
    return poly_trim(std::move(out));
  };

  std::vector<PolyModP> powers{x};  // powers[k] = x^(p^k) mod P
  for (std::size_t k = 1; k <= n; ++k) powers.push_back(frobenius(powers.back()));
  if (powers[n] != x) return false;
  for (std::size_t r : prime_divisors(n)) {
    const PolyModP g = poly_gcd(p, poly_sub(powers[n / r], x, m), m);
    if (g.degree() != 0) return false;
  }
  return true;
}

// -------------------------------------------------------------- period q

BigInt q_of(std::uint64_t p, std::size_t n) {
  if (p < 2 || n < 1) throw InvalidArgument("q_of needs p >= 2 and N >= 1");
  BigInt pn;
  mpz_pow_ui(pn.get_mpz_t(), from_u64(p).get_mpz_t(), n);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), BigInt(pn - 1).get_mpz_t(), BigInt(from_u64(p) - 1).get_mpz_t());
  return q;
}

BigInt FactorizationOfQ::product() const {
  BigInt prod = 1;
  for (const auto& [prime, mult] : factors) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), prime.get_mpz_t(), mult);
    prod *= pw;
  }
  return prod;
}

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t block = 128;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

FactorizationOfQ factorize(const BigInt& q) {
  static const BigInt kCap("1000000000000000000");
  if (q < 1) throw InvalidArgument("factorize needs q >= 1");
  if (q > kCap) throw InvalidArgument("q exceeds the built-in factorization cap of 10^18");
  std::uint64_t n = to_u64(q);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d < 10000 && d * d <= n; ++d)
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  FactorizationOfQ f;
  f.provenance = FactorizationOfQ::Provenance::Computed;
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    f.factors.emplace_back(from_u64(primes[i]), static_cast<unsigned>(j - i));
    i = j;
  }
  return f;
}

FactorizationOfQ parse_factorization(std::string_view text, const BigInt& q) {
  FactorizationOfQ f;
  f.provenance = FactorizationOfQ::Provenance::Supplied;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string prime_text, mult_text, extra;
    if (!(ls >> prime_text)) continue;
    if (!(ls >> mult_text) || (ls >> extra))
      throw BadFactorization("line " + std::to_string(lineno) + ": expected 'prime multiplicity'");
    BigInt prime, mult;
    try {
      prime = parse_bigint(prime_text);
      mult = parse_bigint(mult_text);
    } catch (const InvalidArgument& e) {
      throw BadFactorization("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (prime < 2 || mult < 1 || mult > 100000)
      throw BadFactorization("line " + std::to_string(lineno) + ": out-of-range entry");
    if (mpz_probab_prime_p(prime.get_mpz_t(), 40) == 0)
      throw BadFactorization("line " + std::to_string(lineno) + ": " + to_decimal(prime) +
                             " is not prime");
    f.factors.emplace_back(prime, static_cast<unsigned>(mult.get_ui()));
  }
  if (f.product() != q) throw BadFactorization("factor product does not equal q");
  return f;
}

// ----------------------------------------------------------- certificate

PeriodCertificate certify_max_period(const OperatorSpec& spec, const Modulus& m,
                                     const FactorizationOfQ* factors) {
  PeriodCertificate cert;
  cert.q = q_of(m.value(), spec.n());
  if (factors && factors->product() != cert.q)
    throw BadFactorization("factor product does not equal q");

  const ResidueMatrix a = residue_matrix(spec, m);
  const PolyModP chi = char_poly_mod(a, m);
  cert.irreducible = is_irreducible(chi, m);

  // With an irreducible characteristic polynomial the minimal polynomial is chi,
  // so A^e == I exactly when x^e == 1 mod chi; otherwise fall back to matrices.
  auto power_is_identity = [&](const BigInt& e) {
    if (cert.irreducible) {
      const PolyModP r = poly_pow_mod(PolyModP{{Residue(0), Residue(1)}}, e, chi, m);
      return r == PolyModP{{Residue(1)}};
    }
    return matrix_pow_mod(a, e, m).is_identity();
  };

  cert.cond1 = power_is_identity(cert.q);
  bool all_pass = true;
  if (factors) {
    cert.cond2_evaluated = true;
    for (const auto& [r, mult] : factors->factors) {
      BigInt reduced;
      mpz_divexact(reduced.get_mpz_t(), cert.q.get_mpz_t(), r.get_mpz_t());
      const bool pass = !power_is_identity(reduced);
      cert.cond2.emplace_back(r, pass);
      all_pass = all_pass && pass;
    }
  }
  cert.maximal = cert.irreducible && cert.cond1 && cert.cond2_evaluated && all_pass;
  cert.seed_independent = cert.maximal;
  return cert;
}

nlohmann::json to_json(const PeriodCertificate& c) {
  nlohmann::json cond2 = nlohmann::json::array();
  for (const auto& [r, pass] : c.cond2) cond2.push_back({{"r", to_decimal(r)}, {"pass", pass}});
  return {{"schema", "mixmax.certificate/1"},
          {"q_digits", decimal_digits(c.q)},
          {"irreducible", c.irreducible},
          {"cond1", c.cond1},
          {"cond2_evaluated", c.cond2_evaluated},
          {"cond2", cond2},
          {"maximal", c.maximal},
          {"seed_independent", c.seed_independent}};
}

// ---------------------------------------------------------- brute force

namespace {

std::uint64_t state_space_size(const Modulus& m, std::size_t n) {
  long double size = std::pow(static_cast<long double>(m.value()), static_cast<long double>(n));
  if (size > static_cast<long double>(kBruteForceLimit))
    throw StateSpaceTooLarge("p^N exceeds the brute-force bound of 10^7");
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < n; ++i) s *= m.value();
  return s;
}

}  // namespace

BigInt brute_force_period(const OperatorSpec& spec, const Modulus& m,
                          std::span<const std::uint64_t> seed) {
  if (seed.size() != spec.n()) throw InvalidArgument("seed length must equal N");
  state_space_size(m, spec.n());
  std::vector<Residue> start(seed.size());
  bool nonzero = false;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    start[i] = reduce(seed[i], m);
    nonzero = nonzero || start[i].value != 0;
  }
  if (!nonzero) throw AllZeroSeed();
  const ResidueMatrix a = residue_matrix(spec, m);
  std::vector<Residue> v = start;
  std::uint64_t t = 0;
  do {
    v = apply(a, v, m);
    ++t;
  } while (v != start);
  return from_u64(t);
}

std::vector<std::uint64_t> enumerate_orbits(const OperatorSpec& spec, const Modulus& m) {
  const std::size_t n = spec.n();
  const std::uint64_t total = state_space_size(m, n);
  const ResidueMatrix a = residue_matrix(spec, m);
  const std::uint64_t p = m.value();
  auto decode = [&](std::uint64_t idx) {
    std::vector<Residue> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Residue(idx % p);
      idx /= p;
    }
    return v;
  };
  auto encode = [&](const std::vector<Residue>& v) {
    std::uint64_t idx = 0;
    for (std::size_t i = n; i-- > 0;) idx = idx * p + v[i].value;
    return idx;
  };
  std::vector<bool> seen(total, false);
  std::vector<std::uint64_t> orbits;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    if (seen[idx]) continue;
    std::vector<Residue> v = decode(idx);
    std::uint64_t len = 0;
    std::uint64_t cur = idx;
    do {
      seen[cur] = true;
      v = apply(a, v, m);
      cur = encode(v);
      ++len;
    } while (cur != idx);
    orbits.push_back(len);
  }
  return orbits;
}

double density_log10(const BigInt& q, double h) {
  if (q < 1 || !(h > 0)) throw InvalidArgument("density_log10 needs q >= 1 and h > 0");
  const double qd = mpz_get_d(q.get_mpz_t());
  return qd * h / std::log(10.0) - log10_of(q);
}

}  // namespace mixmax
