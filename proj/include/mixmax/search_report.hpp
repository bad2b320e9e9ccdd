#pragma once

// Parameter scans over s and the consolidated per-candidate quality report.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "mixmax/bigint.hpp"
#include "mixmax/field_arith.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/operators.hpp"
#include "mixmax/spectral.hpp"

namespace mixmax {

inline constexpr double kDefaultEntropyThreshold = 50.0;

struct ScanOptions {
  double entropy_threshold = kDefaultEntropyThreshold;
  /// Above this N the entropy is the 2N/pi estimate.
  std::size_t spectral_cap = 512;
  unsigned jobs = 1;
};

struct CandidateReport {
  /// When the requested parameters do not form a valid spec, this holds the
  /// same family and N with s = 0, `s` holds the request and `error` the reason.
  OperatorSpec spec;
  BigInt s;
  bool det_ok = false;
  bool irreducible = false;
  EntropyReport entropy;
  bool entropy_ok = false;
  std::optional<CConditionVerdict> c_condition;
  std::optional<PeriodCertificate> certificate;
  double log10_period = 0;
  std::size_t period_digits = 0;
  std::optional<std::string> error;

  bool maximal() const { return certificate && certificate->maximal; }
};

/// One report per s in input order of evaluation, then stably sorted:
/// maximal first, then irreducible, then by descending entropy.
/// Certification runs only when factors are given and the cheap filters pass.
std::vector<CandidateReport> scan(Family family, std::size_t n, std::span<const BigInt> s_candidates,
                                  const BigInt& m, const BigInt& b, const Modulus& modulus,
                                  const FactorizationOfQ* factors = nullptr,
                                  const ScanOptions& options = {});

CandidateReport evaluate_candidate(const OperatorSpec& spec, const Modulus& modulus,
                                   const FactorizationOfQ* factors, const ScanOptions& options);

struct TableRow {
  std::size_t n = 0;
  BigInt s;
  BigInt m;
  double entropy = 0;
  bool entropy_estimate = false;
  std::size_t log10_q = 0;  // decimal digit count of q
};

TableRow table_row(const OperatorSpec& spec, const Modulus& modulus,
                   std::size_t spectral_cap = 512);

nlohmann::json to_json(const CandidateReport& r);
nlohmann::json to_json(std::span<const CandidateReport> reports);
nlohmann::json to_json(const TableRow& row);

/// Aligned columns: N, s, m, entropy, log10 q. Estimated entropies carry a '*'.
std::string format_table(std::span<const TableRow> rows);

}  // namespace mixmax
