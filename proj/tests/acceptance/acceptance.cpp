// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mixmax/error.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/generator.hpp"
#include "mixmax/operators.hpp"
#include "mixmax/spectral.hpp"
#include "mixmax/statkit.hpp"

using namespace mixmax;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;
std::set<int> selected;  // empty: run everything

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  if (!selected.empty() && !selected.count(id)) return;
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-34s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timed {
  double value;
  double seconds;
};

Timed timed_entropy(const OperatorSpec& spec) {
  const auto t0 = Clock::now();
  const double h = static_cast<double>(entropy(eigenvalues(spec)).entropy);
  return {h, seconds_since(t0)};
}

const Modulus& p61() {
  static const Modulus m = Modulus::mersenne61();
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  report(1, "entropy, N=256 two-parameter", [] {
    const Timed a = timed_entropy(OperatorSpec::two_param(256, -1));
    const Timed b = timed_entropy(OperatorSpec::two_param(256, parse_bigint("487013230256099064")));
    const bool ok = std::fabs(a.value - 164.5) <= 0.5 && std::fabs(b.value - 193.6) <= 0.5 &&
                    a.seconds <= 60 && b.seconds <= 60;
    return Outcome{ok, "h(s=-1)=" + fmt("%.3f", a.value) + " [" + fmt("%.1fs", a.seconds) +
                           "], h(s=487013230256099064)=" + fmt("%.3f", b.value) + " [" +
                           fmt("%.1fs", b.seconds) + "]; want 164.5+-0.5, 193.6+-0.5, <=60s"};
  });

  report(2, "entropy, three-parameter rows", [] {
    struct Row {
      std::size_t n;
      const char* m;
      double want, tol;
    };
    const Row rows[] = {{8, "2^53+1", 220.4, 0.5}, {17, "2^36+1", 374.3, 0.5}, {40, "2^42+1", 1106.3, 1.5}};
    bool ok = true;
    std::string detail;
    for (const Row& r : rows) {
      const Timed t = timed_entropy(OperatorSpec::three_param(r.n, 0, parse_bigint(r.m)));
      const bool good = std::fabs(t.value - r.want) <= r.tol && t.seconds <= 60;
      ok = ok && good;
      detail += "N=" + std::to_string(r.n) + ":" + fmt("%.3f", t.value) + " ";
    }
    return Outcome{ok, detail + "; want 220.4+-0.5, 374.3+-0.5, 1106.3+-1.5"};
  });

  report(3, "spectral extremes, N=256 s=-1", [] {
    const EntropyReport e = entropy(eigenvalues(OperatorSpec::two_param(256, -1)));
    const double lo = static_cast<double>(e.lambda_min), hi = static_cast<double>(e.lambda_max);
    const bool ok = std::fabs(lo - 0.25) <= 0.005 && std::fabs(hi - 3002) <= 30;
    return Outcome{ok, "lambda_min=" + fmt("%.6f", lo) + " lambda_max=" + fmt("%.2f", hi) +
                           "; want 0.25+-0.005, 3002+-30"};
  });

  report(4, "approximate eigenvalues, |l|<0.9", [] {
    const Spectrum sp = eigenvalues(OperatorSpec::two_param(256, -1));
    const ApproxComparison c = compare_with_approximation(sp, 0.9);
    const ApproxComparison inner = compare_with_approximation(sp, 0.5);
    std::ostringstream d;
    d << "compared=" << c.compared << " max_rel_err=" << fmt("%.4f", c.max_relative_error)
      << " at |l|=" << fmt("%.4f", static_cast<double>(std::abs(c.worst_eigenvalue)))
      << " j=" << c.worst_j << " (|l|<0.5: " << inner.compared << " pts, "
      << fmt("%.4f", inner.max_relative_error) << "); want <= 0.01";
    return Outcome{c.max_relative_error <= 0.01, d.str()};
  });

  report(5, "asymptotic entropy h/N vs 2/pi", [] {
    const double target = 2.0 / std::numbers::pi;
    bool within = true, monotone = true;
    double prev = INFINITY;
    std::string detail;
    for (std::size_t n : {64u, 128u, 256u, 512u}) {
      const double h = timed_entropy(OperatorSpec::two_param(n, -1)).value;
      const double dev = std::fabs(h / static_cast<double>(n) - target);
      within = within && dev <= 0.02;
      monotone = monotone && dev < prev;
      prev = dev;
      detail += "N=" + std::to_string(n) + ":" + fmt("%.5f", dev) + " ";
    }
    detail += std::string("within=") + (within ? "yes" : "no") + " monotone=" + (monotone ? "yes" : "no");
    return Outcome{within && monotone, detail};
  });

  report(6, "period digit counts", [] {
    const std::pair<std::size_t, std::size_t> want[] = {{256, 4682}, {8, 129},   {17, 294},
                                                        {40, 716},   {60, 1083}, {96, 1745},
                                                        {120, 2185}, {240, 4389}, {7307, 134158}};
    bool ok = true;
    double slowest = 0;
    std::string detail;
    for (const auto& [n, digits] : want) {
      const auto t0 = Clock::now();
      const std::size_t got = decimal_digits(q_of(kMersenne61, n));
      slowest = std::max(slowest, seconds_since(t0));
      if (got != digits) {
        ok = false;
        detail += "N=" + std::to_string(n) + ":" + std::to_string(got) + "!=" + std::to_string(digits) + " ";
      }
    }
    ok = ok && slowest < 1.0;
    if (detail.empty()) detail = "all 9 match ";
    return Outcome{ok, detail + "slowest " + fmt("%.3fs", slowest)};
  });

  report(7, "certificate <=> brute-force orbits", [] {
    std::size_t cases = 0, maximal = 0, mismatches = 0, skipped = 0;
    const auto t0 = Clock::now();
    for (std::uint64_t p : std::initializer_list<std::uint64_t>{2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
      for (std::size_t n : {2u, 3u, 4u})
        for (long s : {-1L, 0L, 1L})
          for (Family fam : {Family::TwoParam, Family::ThreeParam, Family::FourParam}) {
            if (n < 3 && s != 0) {
              ++skipped;
              continue;
            }
            const OperatorSpec spec(fam, n, s, 3, 1);
            const Modulus m(p);
            const BigInt q = q_of(p, n);
            const PeriodCertificate cert = certify_max_period(spec, m, factorize(q));
            const auto orbits = enumerate_orbits(spec, m);
            bool all_full = true;
            for (auto len : orbits) all_full = all_full && from_u64(len) == q;
            const bool partition = all_full && orbits.size() == p - 1;
            ++cases;
            maximal += cert.maximal;
            if (cert.maximal != all_full || (cert.maximal && !partition)) ++mismatches;
          }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << cases << " specs, " << maximal << " maximal, " << mismatches << " mismatches ("
      << skipped << " N=2 s!=0 combinations are not valid specs)";
    return Outcome{mismatches == 0 && dt <= 300, d.str()};
  });

  report(8, "fast step and skip", [] {
    std::mt19937_64 rng(20240613);
    std::size_t step_checks = 0, skip_checks = 0, bad = 0;
    for (std::uint64_t p : std::initializer_list<std::uint64_t>{11ULL, kMersenne61}) {
      const Modulus m(p);
      for (std::size_t n : {2u, 8u, 64u, 256u}) {
        const long s = n < 3 ? 0 : -1;
        const OperatorSpec specs[] = {OperatorSpec::two_param(n, s),
                                      OperatorSpec::three_param(n, s, parse_bigint("2^36+1")),
                                      OperatorSpec::four_param(n, s, parse_bigint("2^20+1"), 3)};
        for (const auto& spec : specs) {
          std::vector<std::uint64_t> v(n);
          auto fresh = [&] {
            for (auto& x : v) x = rng() % p;
            v[0] = v[0] ? v[0] : 1;
            return seed_from_vector(spec, m, v);
          };
          for (int i = 0; i < 10000; ++i) {
            GeneratorState a = fresh();
            GeneratorState b = a;
            a.step();
            b.step_naive();
            bad += !(a == b);
            ++step_checks;
          }
          const GeneratorState g = fresh();
          for (std::uint64_t k : std::initializer_list<std::uint64_t>{0ULL, 1ULL, 1000ULL}) {
            GeneratorState a = g, b = g;
            a.skip(from_u64(k));
            for (std::uint64_t i = 0; i < k; ++i) b.step();
            bad += !(a == b);
            ++skip_checks;
          }
          const BigInt k1 = from_u64(rng()) * BigInt("18446744073709551616") + from_u64(rng());
          const BigInt k2 = from_u64(rng()) * BigInt("18446744073709551616") + from_u64(rng());
          GeneratorState whole = g, parts = g;
          whole.skip(k1 + k2);
          parts.skip(k1);
          parts.skip(k2);
          GeneratorState by_matrix = g;
          if (n <= 64) {
            by_matrix.skip_by_matrix(k1 + k2);
            bad += !(by_matrix.vector().size() == whole.vector().size() &&
                     std::equal(whole.vector().begin(), whole.vector().end(), by_matrix.vector().begin()));
          }
          bad += !std::equal(whole.vector().begin(), whole.vector().end(), parts.vector().begin());
          ++skip_checks;
        }
      }
    }
    std::ostringstream d;
    d << step_checks << " step comparisons, " << skip_checks << " skip comparisons, " << bad
      << " mismatches";
    return Outcome{bad == 0, d.str()};
  });

  report(9, "condition 1, N=8 m=2^53+1", [] {
    const OperatorSpec spec = OperatorSpec::three_param(8, 0, parse_bigint("2^53+1"));
    const BigInt q = q_of(kMersenne61, 8);
    const bool irreducible = is_irreducible(char_poly_mod(spec, p61()), p61());
    const bool identity = matrix_pow_mod(spec, q, p61()).is_identity();
    const PeriodCertificate cert = certify_max_period(spec, p61(), nullptr);
    const bool ok = irreducible && identity && cert.cond1 && cert.irreducible;
    return Outcome{ok, std::string("irreducible=") + (irreducible ? "yes" : "no") +
                           " A^q==I=" + (identity ? "yes" : "no") + " (q has " +
                           std::to_string(decimal_digits(q)) + " digits)"};
  });

  report(10, "statistical smoke, 10^7 draws", [] {
    const OperatorSpec spec = OperatorSpec::two_param(256, parse_bigint("487013230256099064"));
    GeneratorState g = seed_from_word(spec, p61(), 1);
    const std::size_t n = 10'000'000;
    const std::vector<double> x = draw_units(g, n);
    const TestResult c = chisq_uniform(x, 1000);
    const TestResult sp = serial_pairs(x, 32);
    std::vector<std::size_t> lags;
    for (std::size_t k = 1; k <= 64; ++k) lags.push_back(k);
    const auto ac = autocorrelation(x, lags);
    bool ac_pass = true;
    double worst = 0;
    for (const auto& r : ac) {
      ac_pass = ac_pass && r.pass;
      worst = std::max(worst, std::fabs(r.statistic));
    }
    const bool rho_bound = worst < 4.0 / std::sqrt(static_cast<double>(n));
    std::ostringstream d;
    d << "chisq p=" << fmt("%.4f", c.p_value) << " serial p=" << fmt("%.4f", sp.p_value)
      << " autocorr " << (ac_pass ? "all in band" : "out of band") << ", max|rho|*sqrt(n)="
      << fmt("%.3f", worst * std::sqrt(static_cast<double>(n)));
    return Outcome{c.pass && sp.pass && ac_pass && rho_bound, d.str()};
  });

  report(11, "det_mod == 1 grid", [] {
    std::size_t checked = 0, bad = 0;
    for (std::uint64_t p : std::initializer_list<std::uint64_t>{11ULL, kMersenne61})
      for (std::size_t n : {2u, 8u, 64u, 256u, 1024u}) {
        const long s = n < 3 ? 0 : -1;
        const OperatorSpec specs[] = {OperatorSpec::two_param(n, s),
                                      OperatorSpec::three_param(n, s, parse_bigint("2^36+1")),
                                      OperatorSpec::four_param(n, s, parse_bigint("2^20+1"), 3)};
        for (const auto& spec : specs) {
          ++checked;
          bad += det_mod(spec, Modulus(p)).value != 1;
        }
      }
    return Outcome{bad == 0, std::to_string(checked) + " determinants, " + std::to_string(bad) + " not 1"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
