#include "mixmax/search_report.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <iomanip>
#include <sstream>

#include "mixmax/error.hpp"

namespace mixmax {

namespace {

EntropyReport entropy_for(const OperatorSpec& spec, std::size_t cap,
                          std::optional<CConditionVerdict>* verdict) {
  if (spec.n() > cap) return entropy_estimate(spec.n());
  const Spectrum sp = eigenvalues(spec);
  if (verdict) *verdict = check_c_condition(sp);
  return entropy(sp);
}

}  // namespace

CandidateReport evaluate_candidate(const OperatorSpec& spec, const Modulus& modulus,
                                   const FactorizationOfQ* factors, const ScanOptions& options) {
  CandidateReport r{spec, spec.s()};
  try {
    const BigInt q = q_of(modulus.value(), spec.n());
    r.log10_period = log10_of(q);
    r.period_digits = decimal_digits(q);

    r.det_ok = det_mod(spec, modulus).value == 1;
    if (r.det_ok) r.irreducible = is_irreducible(char_poly_mod(spec, modulus), modulus);

    r.entropy = entropy_for(spec, options.spectral_cap, &r.c_condition);
    r.entropy_ok = r.entropy.entropy >= options.entropy_threshold;

    if (factors && r.det_ok && r.irreducible)
      r.certificate = certify_max_period(spec, modulus, factors);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<CandidateReport> scan(Family family, std::size_t n, std::span<const BigInt> s_candidates,
                                  const BigInt& m, const BigInt& b, const Modulus& modulus,
                                  const FactorizationOfQ* factors, const ScanOptions& options) {
  std::vector<CandidateReport> out;
  out.reserve(s_candidates.size());

  auto one = [&](const BigInt& s) {
    try {
      return evaluate_candidate(OperatorSpec(family, n, s, m, b), modulus, factors, options);
    } catch (const std::exception& e) {
      CandidateReport r{OperatorSpec(family, n, 0, m, b), s};
      r.error = e.what();
      return r;
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  for (std::size_t start = 0; start < s_candidates.size(); start += jobs) {
    const std::size_t stop = std::min(s_candidates.size(), start + jobs);
    if (jobs == 1) {
      out.push_back(one(s_candidates[start]));
      continue;
    }
    std::vector<std::future<CandidateReport>> batch;
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, one, std::cref(s_candidates[i])));
    for (auto& f : batch) out.push_back(f.get());
  }

  std::stable_sort(out.begin(), out.end(), [](const CandidateReport& x, const CandidateReport& y) {
    if (x.maximal() != y.maximal()) return x.maximal();
    if (x.irreducible != y.irreducible) return x.irreducible;
    return x.entropy.entropy > y.entropy.entropy;
  });
  return out;
}

TableRow table_row(const OperatorSpec& spec, const Modulus& modulus, std::size_t spectral_cap) {
  const EntropyReport e = entropy_for(spec, spectral_cap, nullptr);
  return TableRow{spec.n(),
                  spec.s(),
                  spec.m(),
                  static_cast<double>(e.entropy),
                  e.estimate,
                  decimal_digits(q_of(modulus.value(), spec.n()))};
}

nlohmann::json to_json(const CandidateReport& r) {
  nlohmann::json j = {{"spec", to_json(r.spec)},
                      {"s", to_decimal(r.s)},
                      {"det_ok", r.det_ok},
                      {"irreducible", r.irreducible},
                      {"entropy", to_json(r.entropy)},
                      {"entropy_ok", r.entropy_ok},
                      {"maximal", r.maximal()},
                      {"log10_period", r.log10_period},
                      {"period_digits", r.period_digits}};
  if (r.c_condition)
    j["c_condition"] = {{"pass", r.c_condition->pass},
                        {"min_gap", static_cast<double>(r.c_condition->min_gap)},
                        {"log_det", static_cast<double>(r.c_condition->log_det)}};
  else
    j["c_condition"] = nullptr;
  j["certificate"] = r.certificate ? to_json(*r.certificate) : nlohmann::json(nullptr);
  j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(std::span<const CandidateReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {{"schema", "mixmax.scan/1"}, {"candidates", arr}};
}

nlohmann::json to_json(const TableRow& row) {
  return {{"N", row.n},
          {"s", to_decimal(row.s)},
          {"m", to_decimal(row.m)},
          {"entropy", row.entropy},
          {"entropy_estimate", row.entropy_estimate},
          {"log10_q", row.log10_q}};
}

std::string format_table(std::span<const TableRow> rows) {
  std::vector<std::array<std::string, 5>> cells;
  cells.push_back({"N", "s", "m", "entropy", "log10 q"});
  for (const auto& r : rows) {
    std::ostringstream h;
    h << std::fixed << std::setprecision(1) << r.entropy << (r.entropy_estimate ? "*" : "");
    cells.push_back({std::to_string(r.n), to_decimal(r.s), to_decimal(r.m), h.str(),
                     std::to_string(r.log10_q)});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < 5; ++c) {
      if (c) out << "  ";
      out << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mixmax
