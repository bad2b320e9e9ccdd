#include "mixmax/operators.hpp"

#include <utility>

#include "mixmax/error.hpp"
#include "mixmax/galois.hpp"

namespace mixmax {

std::string family_name(Family f) {
  switch (f) {
    case Family::TwoParam: return "two";
    case Family::ThreeParam: return "three";
    case Family::FourParam: return "four";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "two" || name == "2") return Family::TwoParam;
  if (name == "three" || name == "3") return Family::ThreeParam;
  if (name == "four" || name == "4") return Family::FourParam;
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

OperatorSpec::OperatorSpec(Family family, std::size_t n, BigInt s, BigInt m, BigInt b)
    : family_(family), n_(n), s_(std::move(s)), m_(std::move(m)), b_(std::move(b)) {
  if (n_ < 2) throw InvalidArgument("N must be at least 2");
  if (n_ < 3 && s_ != 0) throw InvalidArgument("s must be 0 when N < 3");
  if (family_ == Family::TwoParam) m_ = 1;
  if (family_ != Family::FourParam) b_ = 0;
  if (m_ <= 0) throw InvalidArgument("m must be positive");
}

OperatorSpec OperatorSpec::two_param(std::size_t n, BigInt s) {
  return OperatorSpec(Family::TwoParam, n, std::move(s));
}

OperatorSpec OperatorSpec::three_param(std::size_t n, BigInt s, BigInt m) {
  return OperatorSpec(Family::ThreeParam, n, std::move(s), std::move(m));
}

OperatorSpec OperatorSpec::four_param(std::size_t n, BigInt s, BigInt m, BigInt b) {
  return OperatorSpec(Family::FourParam, n, std::move(s), std::move(m), std::move(b));
}

BigInt OperatorSpec::entry(std::size_t i, std::size_t j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw RangeError("entry index out of range");
  BigInt v;
  if (i == 1 || j == 1 || j > i) {
    v = 1;
  } else {
    const unsigned long d = static_cast<unsigned long>(i - j);
    switch (family_) {
      case Family::TwoParam: v = d + 2; break;
      case Family::ThreeParam: v = m_ * d + 2; break;
      case Family::FourParam: v = (i == j) ? BigInt(2) : BigInt(m_ * (d + 2) + b_); break;
    }
  }
  if (i == 3 && j == 2) v += s_;
  return v;
}

DenseMatrix materialize(const OperatorSpec& spec) {
  DenseMatrix a;
  a.n = spec.n();
  a.entries.reserve(a.n * a.n);
  for (std::size_t i = 1; i <= a.n; ++i)
    for (std::size_t j = 1; j <= a.n; ++j) a.entries.push_back(spec.entry(i, j));
  return a;
}

Residue det_mod(const OperatorSpec& spec, const Modulus& m) {
  return determinant(residue_matrix(spec, m), m);
}

std::vector<Diagnostic> validate(const OperatorSpec& spec, const Modulus& m) {
  std::vector<Diagnostic> out;
  if (spec.m() * static_cast<unsigned long>(spec.n()) >= from_u64(m.value())) {
    out.push_back({Diagnostic::Severity::Warning,
                   "N*m >= p: the rational sublattice no longer mirrors the continuous map"});
  }
  if (auto k = spec.claimed_shift()) {
    BigInt expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 2, *k);
    expect += 1;
    if (expect != spec.m())
      out.push_back({Diagnostic::Severity::Error,
                     "m is claimed to be 2^" + std::to_string(*k) + "+1 but equals " +
                         to_decimal(spec.m())});
  }
  return out;
}

nlohmann::json to_json(const OperatorSpec& spec) {
  return {{"family", family_name(spec.family())},
          {"N", spec.n()},
          {"s", to_decimal(spec.s())},
          {"m", to_decimal(spec.m())},
          {"b", to_decimal(spec.b())}};
}

namespace {

BigInt json_int(const nlohmann::json& j, const char* key, BigInt fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  throw FormatError(std::string("spec field '") + key + "' must be a decimal string");
}

}  // namespace

OperatorSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("N"))
    throw FormatError("spec JSON needs at least 'family' and 'N'");
  const auto& n = j.at("N");
  if (!n.is_number_unsigned() && !n.is_number_integer()) throw FormatError("'N' must be an integer");
  long long nv = n.get<long long>();
  if (nv < 2) throw FormatError("'N' must be >= 2");
  return OperatorSpec(parse_family(j.at("family").get<std::string>()),
                      static_cast<std::size_t>(nv), json_int(j, "s", 0), json_int(j, "m", 1),
                      json_int(j, "b", 0));
}

}  // namespace mixmax
