#include "doctest.h"

#include "mixmax/error.hpp"
#include "mixmax/search_report.hpp"

using namespace mixmax;

TEST_CASE("empty candidate list") {
  const std::vector<BigInt> none;
  CHECK(scan(Family::TwoParam, 8, none, 1, 0, Modulus(5)).empty());
}

TEST_CASE("scan verdicts match brute force at tiny scale") {
  const Modulus m(5);
  const std::vector<BigInt> cands = {-1, 0, 1, 2, 3, 4};
  const BigInt q = q_of(5, 3);
  const FactorizationOfQ f = factorize(q);
  const auto reports = scan(Family::TwoParam, 3, cands, 1, 0, m, &f);
  REQUIRE(reports.size() == cands.size());
  bool seen_non_maximal = false;
  for (const auto& r : reports) {
    CHECK_FALSE(r.error);
    CHECK(r.det_ok);
    const auto orbits = enumerate_orbits(r.spec, m);
    const bool full = orbits.size() == 4 && from_u64(orbits[0]) == q;
    CHECK(r.maximal() == full);
    // Maximal candidates come first.
    if (!r.maximal()) seen_non_maximal = true;
    else CHECK_FALSE(seen_non_maximal);
  }
}

TEST_CASE("invalid candidates are reported without aborting") {
  const std::vector<BigInt> cands = {0, 1, 2};
  const auto reports = scan(Family::TwoParam, 2, cands, 1, 0, Modulus(5));
  REQUIRE(reports.size() == 3);
  int errors = 0;
  for (const auto& r : reports) errors += r.error ? 1 : 0;
  CHECK(errors == 2);
}

TEST_CASE("scan is deterministic and parallel-safe") {
  const std::vector<BigInt> cands = {-1, 0, 1, 5, 17};
  ScanOptions one, four;
  four.jobs = 4;
  const auto a = scan(Family::TwoParam, 16, cands, 1, 0, Modulus::mersenne61(), nullptr, one);
  const auto b = scan(Family::TwoParam, 16, cands, 1, 0, Modulus::mersenne61(), nullptr, four);
  CHECK(to_json(std::span<const CandidateReport>(a)).dump() ==
        to_json(std::span<const CandidateReport>(b)).dump());
}

TEST_CASE("entropy threshold") {
  const std::vector<BigInt> cands = {-1};
  ScanOptions opts;
  opts.entropy_threshold = 41.0;
  auto r = scan(Family::TwoParam, 64, cands, 1, 0, Modulus::mersenne61(), nullptr, opts);
  CHECK_FALSE(r[0].entropy_ok);  // h = 40.4
  opts.entropy_threshold = 40.0;
  r = scan(Family::TwoParam, 64, cands, 1, 0, Modulus::mersenne61(), nullptr, opts);
  CHECK(r[0].entropy_ok);
  CHECK_FALSE(r[0].certificate);
}

TEST_CASE("table rows") {
  const Modulus m = Modulus::mersenne61();
  const TableRow r = table_row(OperatorSpec::three_param(8, 0, parse_bigint("2^53+1")), m);
  CHECK(r.entropy == doctest::Approx(220.4).epsilon(0.002));
  CHECK(r.log10_q == 129);
  CHECK_FALSE(r.entropy_estimate);

  const TableRow big = table_row(OperatorSpec::two_param(7307, 0), m);
  CHECK(big.entropy_estimate);
  CHECK(big.entropy == doctest::Approx(4651.75).epsilon(1e-4));
  CHECK(big.log10_q == 134159);

  const std::string text = format_table(std::vector<TableRow>{r, big});
  CHECK(text.find("4651.8*") != std::string::npos);
}

TEST_CASE("digit count tracks N log10 p") {
  for (std::uint64_t p : std::initializer_list<std::uint64_t>{2ULL, 3ULL, 11ULL, 65537ULL, kMersenne61})
    for (std::size_t n : {2u, 5u, 17u, 64u, 256u}) {
      const double approx = static_cast<double>(n) * std::log10(static_cast<double>(p)) -
                            std::log10(static_cast<double>(p - 1));
      const auto digits = static_cast<double>(decimal_digits(q_of(p, n)));
      CHECK(std::fabs(digits - std::floor(approx)) <= 1.0);
    }
}
