#pragma once

// Empirical smoke tests over a stream of unit-interval draws.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace mixmax {

class GeneratorState;

struct Band {
  double low = 0.001;
  double high = 0.999;
};

struct TestResult {
  std::string name;
  double statistic = 0;
  double p_value = 0;
  bool pass = false;
  /// Lag-0 autocorrelation is reported but never judged.
  bool exempt = false;
};

/// Upper tail P(chi2_dof > x).
double chi_square_sf(double x, double dof);

/// Throws InsufficientDraws when draws.size() < 10 * bins.
TestResult chisq_uniform(std::span<const double> draws, std::size_t bins, Band band = {});

/// Non-overlapping pairs on a grid x grid lattice. Throws InsufficientDraws for an
/// odd count or fewer than 10 pairs per cell.
TestResult serial_pairs(std::span<const double> draws, std::size_t grid, Band band = {});

/// Sample autocorrelation rho_k for each lag; p-value Phi(rho sqrt(n)), so both
/// strong positive and strong negative correlation fall outside the band.
/// Throws InsufficientDraws when the largest lag is not well below the draw count.
std::vector<TestResult> autocorrelation(std::span<const double> draws,
                                        std::span<const std::size_t> lags, Band band = {});

/// n successive next_unit() draws.
std::vector<double> draw_units(GeneratorState& g, std::size_t n);

nlohmann::json to_json(const TestResult& r);
nlohmann::json to_json(std::span<const TestResult> results);

}  // namespace mixmax
