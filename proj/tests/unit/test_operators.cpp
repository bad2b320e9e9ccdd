#include "doctest.h"

#include "mixmax/error.hpp"
#include "mixmax/operators.hpp"
#include "oracles.hpp"

using namespace mixmax;

namespace {

std::vector<OperatorSpec> sample_specs() {
  return {OperatorSpec::two_param(2, 0),
          OperatorSpec::two_param(3, 1),
          OperatorSpec::two_param(10, -1),
          OperatorSpec::two_param(17, parse_bigint("487013230256099064")),
          OperatorSpec::three_param(8, 0, parse_bigint("2^53+1")),
          OperatorSpec::three_param(12, 5, 7),
          OperatorSpec::four_param(9, -3, 4, 11),
          OperatorSpec::four_param(16, 0, parse_bigint("2^36+1"), -2)};
}

}  // namespace

TEST_CASE("two-parameter matrix for N=4, s=1") {
  const OperatorSpec spec = OperatorSpec::two_param(4, 1);
  const long expect[4][4] = {{1, 1, 1, 1}, {1, 2, 1, 1}, {1, 4, 2, 1}, {1, 4, 3, 2}};
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j) CHECK(spec.entry(i, j) == expect[i - 1][j - 1]);
}

TEST_CASE("three-parameter bands") {
  const OperatorSpec spec = OperatorSpec::three_param(5, 0, 10);
  CHECK(spec.entry(2, 2) == 2);
  CHECK(spec.entry(3, 2) == 12);
  CHECK(spec.entry(5, 2) == 32);
  CHECK(spec.entry(5, 1) == 1);
  CHECK(spec.entry(2, 5) == 1);
}

TEST_CASE("four-parameter bands") {
  const OperatorSpec spec = OperatorSpec::four_param(5, 0, 10, 3);
  CHECK(spec.entry(3, 3) == 2);
  CHECK(spec.entry(3, 2) == 33);
  CHECK(spec.entry(5, 2) == 53);
  CHECK(spec.entry(4, 3) == 33);
}

TEST_CASE("closed form matches the reference definition") {
  for (const auto& spec : sample_specs()) {
    const DenseMatrix a = materialize(spec);
    CHECK(a.entries == oracle::dense(spec));
  }
}

TEST_CASE("determinant is exactly one over the integers") {
  for (const auto& spec : sample_specs())
    CHECK(oracle::bareiss_det(oracle::dense(spec), spec.n()) == 1);
}

TEST_CASE("det_mod is one for every family and prime") {
  for (std::uint64_t p : std::initializer_list<std::uint64_t>{2ULL, 3ULL, 11ULL, 65537ULL, kMersenne61})
    for (const auto& spec : sample_specs()) CHECK(det_mod(spec, Modulus(p)).value == 1);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(OperatorSpec::two_param(1, 0), InvalidArgument);
  CHECK_THROWS_AS(OperatorSpec::two_param(2, 1), InvalidArgument);
  CHECK_THROWS_AS(OperatorSpec::three_param(4, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(parse_family("five"), InvalidArgument);
  CHECK_THROWS_AS(OperatorSpec::two_param(4, 0).entry(0, 1), RangeError);
  CHECK_THROWS_AS(OperatorSpec::two_param(4, 0).entry(1, 5), RangeError);
  CHECK(OperatorSpec(Family::TwoParam, 4, 0, 9, 9) == OperatorSpec::two_param(4, 0));
}

TEST_CASE("diagnostics") {
  const Modulus p61 = Modulus::mersenne61();
  CHECK(validate(OperatorSpec::two_param(256, -1), p61).empty());

  auto big_m = OperatorSpec::three_param(8, 0, parse_bigint("2^60+1"));
  auto d = validate(big_m, p61);
  REQUIRE(d.size() == 1);
  CHECK(d[0].severity == Diagnostic::Severity::Warning);

  auto claimed = OperatorSpec::three_param(8, 0, 12345);
  claimed.claim_special_m(13);
  d = validate(claimed, p61);
  REQUIRE(d.size() == 1);
  CHECK(d[0].severity == Diagnostic::Severity::Error);

  auto honest = OperatorSpec::three_param(8, 0, parse_bigint("2^13+1"));
  honest.claim_special_m(13);
  CHECK(validate(honest, p61).empty());
}

TEST_CASE("JSON round trip keeps large values exact") {
  for (const auto& spec : sample_specs()) {
    const auto j = to_json(spec);
    CHECK(j.at("s").is_string());
    CHECK(spec_from_json(j) == spec);
    CHECK(spec_from_json(nlohmann::json::parse(j.dump())) == spec);
  }
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"N": 8})")), FormatError);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"family":"two","N":8,"s":1.5})")),
                  FormatError);
}
