#include "mixmax/statkit.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

#include "mixmax/error.hpp"
#include "mixmax/generator.hpp"

namespace mixmax {

namespace {

bool in_band(double p, Band band) { return p >= band.low && p <= band.high; }

std::size_t bin_of(double x, std::size_t bins) {
  if (!(x >= 0.0)) return 0;
  const auto k = static_cast<std::size_t>(x * static_cast<double>(bins));
  return std::min(k, bins - 1);
}

double chi_square_stat(std::span<const std::uint64_t> counts, double expected) {
  double stat = 0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace

double chi_square_sf(double x, double dof) {
  if (!(dof > 0)) throw InvalidArgument("chi-square needs positive degrees of freedom");
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

TestResult chisq_uniform(std::span<const double> draws, std::size_t bins, Band band) {
  if (bins < 2) throw InvalidArgument("chisq_uniform needs at least 2 bins");
  if (draws.size() < 10 * bins)
    throw InsufficientDraws("chisq_uniform needs at least 10 draws per bin");
  std::vector<std::uint64_t> counts(bins);
  for (double x : draws) ++counts[bin_of(x, bins)];
  const double expected = static_cast<double>(draws.size()) / static_cast<double>(bins);
  TestResult r{"chisq_uniform"};
  r.statistic = chi_square_stat(counts, expected);
  r.p_value = chi_square_sf(r.statistic, static_cast<double>(bins - 1));
  r.pass = in_band(r.p_value, band);
  return r;
}

TestResult serial_pairs(std::span<const double> draws, std::size_t grid, Band band) {
  if (grid < 2) throw InvalidArgument("serial_pairs needs a grid of at least 2");
  if (draws.size() % 2 != 0) throw InsufficientDraws("serial_pairs needs an even number of draws");
  const std::size_t cells = grid * grid;
  const std::size_t pairs = draws.size() / 2;
  if (pairs < 10 * cells) throw InsufficientDraws("serial_pairs needs at least 10 pairs per cell");
  std::vector<std::uint64_t> counts(cells);
  for (std::size_t i = 0; i < pairs; ++i)
    ++counts[bin_of(draws[2 * i], grid) * grid + bin_of(draws[2 * i + 1], grid)];
  TestResult r{"serial_pairs"};
  r.statistic = chi_square_stat(counts, static_cast<double>(pairs) / static_cast<double>(cells));
  r.p_value = chi_square_sf(r.statistic, static_cast<double>(cells - 1));
  r.pass = in_band(r.p_value, band);
  return r;
}

std::vector<TestResult> autocorrelation(std::span<const double> draws,
                                        std::span<const std::size_t> lags, Band band) {
  const std::size_t n = draws.size();
  std::size_t max_lag = 0;
  for (std::size_t k : lags) max_lag = std::max(max_lag, k);
  if (n < 2 || max_lag * 10 >= n)
    throw InsufficientDraws("autocorrelation needs far more draws than the largest lag");

  double mean = 0;
  for (double x : draws) mean += x;
  mean /= static_cast<double>(n);
  double var = 0;
  for (double x : draws) var += (x - mean) * (x - mean);

  const boost::math::normal_distribution<double> z;
  std::vector<TestResult> out;
  for (std::size_t k : lags) {
    TestResult r{"autocorrelation_lag_" + std::to_string(k)};
    double c = 0;
    for (std::size_t i = 0; i + k < n; ++i) c += (draws[i] - mean) * (draws[i + k] - mean);
    r.statistic = var > 0 ? c / var : (k == 0 ? 1.0 : 0.0);
    if (k == 0) {
      r.exempt = true;
      r.p_value = 1.0;
      r.pass = true;
    } else {
      r.p_value = boost::math::cdf(z, r.statistic * std::sqrt(static_cast<double>(n)));
      r.pass = in_band(r.p_value, band);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> draw_units(GeneratorState& g, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = g.next_unit();
  return out;
}

nlohmann::json to_json(const TestResult& r) {
  return {{"name", r.name},
          {"statistic", r.statistic},
          {"p_value", r.p_value},
          {"pass", r.pass},
          {"exempt", r.exempt}};
}

nlohmann::json to_json(std::span<const TestResult> results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back(to_json(r));
    all = all && r.pass;
  }
  return {{"schema", "mixmax.stats/1"}, {"pass", all}, {"results", arr}};
}

}  // namespace mixmax
