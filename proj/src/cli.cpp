#include "mixmax/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"

#include "mixmax/error.hpp"
#include "mixmax/field_arith.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/generator.hpp"
#include "mixmax/operators.hpp"
#include "mixmax/search_report.hpp"
#include "mixmax/spectral.hpp"
#include "mixmax/statkit.hpp"

namespace mixmax::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct SpecFlags {
  std::string family = "two";
  std::optional<std::size_t> n;
  std::string s = "0";
  std::string m = "1";
  std::string b = "0";
  std::string p = "2305843009213693951";
};

struct IoFlags {
  std::string out_path;
  bool force = false;
};

void add_spec_flags(CLI::App* sub, SpecFlags& f) {
  sub->add_option("--family", f.family, "two | three | four")->capture_default_str();
  sub->add_option("--n", f.n, "dimension N");
  sub->add_option("--s", f.s, "perturbation at (3,2), decimal")->capture_default_str();
  sub->add_option("--m", f.m, "decimal or 2^k+c")->capture_default_str();
  sub->add_option("--b", f.b, "decimal")->capture_default_str();
  sub->add_option("--p", f.p, "prime modulus, decimal")->capture_default_str();
}

void add_io_flags(CLI::App* sub, IoFlags& f) {
  sub->add_option("--out", f.out_path, "write to file instead of stdout");
  sub->add_flag("--force", f.force, "allow binary output to a terminal");
}

std::optional<unsigned> special_form(const std::string& text) {
  static const std::regex re(R"(\s*2\^(\d+)\+1\s*)");
  std::smatch mt;
  if (std::regex_match(text, mt, re)) return static_cast<unsigned>(std::stoul(mt[1]));
  return std::nullopt;
}

Modulus modulus_from(const SpecFlags& f) {
  const BigInt p = parse_bigint(f.p);
  if (p < 2 || mpz_sizeinbase(p.get_mpz_t(), 2) > 64) throw UsageError("--p out of range");
  return Modulus(to_u64(p));
}

OperatorSpec spec_from(const SpecFlags& f, const Modulus& modulus, std::ostream& err) {
  std::optional<OperatorSpec> spec;
  std::optional<unsigned> shift = special_form(f.m);
  if (!f.n) {
    const char* env = std::getenv("MIXMAX_SPEC");
    if (!env) throw UsageError("--n is required (or set MIXMAX_SPEC)");
    try {
      spec = spec_from_json(nlohmann::json::parse(env));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("MIXMAX_SPEC: ") + e.what());
    }
    shift.reset();
  } else {
    spec = OperatorSpec(parse_family(f.family), *f.n, parse_bigint(f.s), parse_bigint(f.m),
                        parse_bigint(f.b));
  }
  if (shift) spec->claim_special_m(*shift);
  bool fatal = false;
  for (const Diagnostic& d : validate(*spec, modulus)) {
    const bool is_error = d.severity == Diagnostic::Severity::Error;
    err << (is_error ? "error: " : "warning: ") << d.message << '\n';
    fatal = fatal || is_error;
  }
  if (fatal) throw UsageError("spec failed validation");
  return *spec;
}

class Sink {
 public:
  Sink(const IoFlags& io, std::ostream& fallback, bool binary) {
    if (!io.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(io.out_path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open " + io.out_path);
      stream_ = file_.get();
      return;
    }
    if (binary && !io.force && &fallback == &std::cout && isatty(STDOUT_FILENO))
      throw UsageError("refusing to write binary output to a terminal (use --out or --force)");
    stream_ = &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_json(Sink& sink, const nlohmann::json& j) { *sink << j.dump(2) << '\n'; }

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_u64(parse_bigint(item)));
  return out;
}

std::vector<BigInt> parse_big_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
  return out;
}

std::optional<FactorizationOfQ> load_factors(const std::string& path, const BigInt& q) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_factorization(buf.str(), q);
}

GeneratorState make_generator(const OperatorSpec& spec, const Modulus& modulus,
                              const std::string& seed_vector, std::uint64_t seed,
                              std::uint64_t stream_id) {
  GeneratorState g = seed_vector.empty()
                         ? seed_from_word(spec, modulus, seed)
                         : seed_from_vector(spec, modulus, parse_u64_list(seed_vector));
  if (stream_id != 0) g = g.derive_stream(stream_id);
  return g;
}

SpectralEngine parse_engine(const std::string& name) {
  if (name == "auto") return SpectralEngine::Auto;
  if (name == "qr") return SpectralEngine::DenseQR;
  if (name == "exact") return SpectralEngine::ExactPolynomial;
  throw UsageError("unknown engine: " + name);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MIXMAX generator and analysis tools", "mixmax"};
  app.require_subcommand(1, 1);

  SpecFlags spec_flags;
  IoFlags io;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
  std::string seed_vector;
  std::uint64_t count = 10;
  std::string format = "text";
  std::string engine = "auto";
  std::size_t max_dim = 4096;
  bool csv = false;
  bool inverse = false;
  std::string factors_path;
  std::string s_list;
  double threshold = kDefaultEntropyThreshold;
  std::size_t spectral_cap = 512;
  unsigned jobs = 1;
  bool table = false;
  std::size_t bins = 1000;
  std::size_t grid = 32;
  std::size_t max_lag = 64;
  std::string k_text = "1000000";

  auto* gen = app.add_subcommand("gen", "emit generator output");
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue report (JSON or CSV)");
  auto* ent = app.add_subcommand("entropy", "Kolmogorov entropy (JSON)");
  auto* certify = app.add_subcommand("certify", "maximal-period certificate (JSON)");
  auto* oracle = app.add_subcommand("oracle", "brute-force period for tiny parameters");
  auto* scan_cmd = app.add_subcommand("scan", "evaluate a list of s candidates");
  auto* stats = app.add_subcommand("stats", "empirical smoke tests");
  auto* bench = app.add_subcommand("skip-bench", "time skip against sequential stepping");

  for (CLI::App* sub : {gen, spectrum, ent, certify, oracle, scan_cmd, stats, bench}) {
    add_spec_flags(sub, spec_flags);
    add_io_flags(sub, io);
  }
  for (CLI::App* sub : {gen, stats, bench}) {
    sub->add_option("--seed", seed, "64-bit seed word")->capture_default_str();
    sub->add_option("--seed-vector", seed_vector, "comma-separated residues");
    sub->add_option("--stream-id", stream_id, "derived stream index")->capture_default_str();
  }
  gen->add_option("--count", count)->capture_default_str();
  gen->add_option("--format", format, "raw | text | f64")
      ->check(CLI::IsMember({"raw", "text", "f64"}))
      ->capture_default_str();
  for (CLI::App* sub : {spectrum, ent}) {
    sub->add_option("--engine", engine, "auto | qr | exact")->capture_default_str();
    sub->add_option("--max-dim", max_dim)->capture_default_str();
  }
  spectrum->add_flag("--csv", csv, "CSV instead of JSON");
  spectrum->add_flag("--inverse", inverse, "list 1/lambda in CSV output");
  for (CLI::App* sub : {certify, scan_cmd}) sub->add_option("--factors", factors_path);
  oracle->add_option("--seed-vector", seed_vector, "comma-separated residues");
  scan_cmd->add_option("--s-list", s_list, "comma-separated s candidates")->required();
  scan_cmd->add_option("--threshold", threshold)->capture_default_str();
  scan_cmd->add_option("--spectral-cap", spectral_cap)->capture_default_str();
  scan_cmd->add_option("--jobs", jobs)->capture_default_str();
  scan_cmd->add_flag("--table", table, "aligned text table");
  certify->add_option("--jobs", jobs, "accepted for symmetry; certification is sequential");
  stats->add_option("--count", count)->default_val(1000000);
  stats->add_option("--bins", bins)->capture_default_str();
  stats->add_option("--grid", grid)->capture_default_str();
  stats->add_option("--max-lag", max_lag)->capture_default_str();
  bench->add_option("--k", k_text, "steps to skip")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    const Modulus modulus = modulus_from(spec_flags);
    const OperatorSpec spec = spec_from(spec_flags, modulus, err);

    if (gen->parsed()) {
      GeneratorState g = make_generator(spec, modulus, seed_vector, seed, stream_id);
      Sink sink(io, out, format != "text");
      for (std::uint64_t i = 0; i < count; ++i) {
        if (format == "text") {
          *sink << g.next_residue() << '\n';
        } else if (format == "raw") {
          const std::uint64_t v = g.next_residue();
          unsigned char bytes[8];
          for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(v >> (8 * k));
          (*sink).write(reinterpret_cast<const char*>(bytes), 8);
        } else {
          const double x = g.next_unit();
          std::uint64_t bits;
          std::memcpy(&bits, &x, 8);
          unsigned char bytes[8];
          for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
          (*sink).write(reinterpret_cast<const char*>(bytes), 8);
        }
      }
      return kOk;
    }

    if (spectrum->parsed() || ent->parsed()) {
      SpectralOptions opts;
      opts.engine = parse_engine(engine);
      opts.max_dimension = max_dim;
      const SpectrumReport report = spectrum_report(spec, opts);
      for (const auto& w : report.spectrum.warnings) err << "warning: " << w << '\n';
      Sink sink(io, out, false);
      if (ent->parsed()) {
        nlohmann::json j = to_json(report.entropy);
        j["schema"] = "mixmax.entropy/1";
        j["spec"] = to_json(spec);
        j["engine"] = engine_name(report.spectrum.engine);
        write_json(sink, j);
      } else if (csv) {
        *sink << to_csv(report.spectrum, inverse);
      } else {
        write_json(sink, to_json(report));
      }
      return kOk;
    }

    if (certify->parsed()) {
      const BigInt q = q_of(modulus.value(), spec.n());
      std::optional<FactorizationOfQ> factors = load_factors(factors_path, q);
      if (!factors && q <= BigInt("1000000000000000000")) factors = factorize(q);
      const PeriodCertificate cert =
          certify_max_period(spec, modulus, factors ? &*factors : nullptr);
      nlohmann::json j = to_json(cert);
      j["spec"] = to_json(spec);
      j["p"] = std::to_string(modulus.value());
      if (factors)
        j["factorization"] =
            factors->provenance == FactorizationOfQ::Provenance::Supplied ? "supplied" : "computed";
      Sink sink(io, out, false);
      write_json(sink, j);
      return cert.maximal ? kOk : kFailed;
    }

    if (oracle->parsed()) {
      nlohmann::json j = {{"schema", "mixmax.oracle/1"},
                          {"spec", to_json(spec)},
                          {"p", std::to_string(modulus.value())}};
      if (!seed_vector.empty()) {
        const auto v = parse_u64_list(seed_vector);
        j["seed"] = v;
        j["period"] = to_decimal(brute_force_period(spec, modulus, v));
      } else {
        j["orbits"] = enumerate_orbits(spec, modulus);
      }
      Sink sink(io, out, false);
      write_json(sink, j);
      return kOk;
    }

    if (scan_cmd->parsed()) {
      const std::vector<BigInt> candidates = parse_big_list(s_list);
      const BigInt q = q_of(modulus.value(), spec.n());
      std::optional<FactorizationOfQ> factors = load_factors(factors_path, q);
      ScanOptions opts{threshold, spectral_cap, jobs};
      const auto reports = scan(spec.family(), spec.n(), candidates, spec.m(), spec.b(), modulus,
                                factors ? &*factors : nullptr, opts);
      Sink sink(io, out, false);
      if (table) {
        std::vector<TableRow> rows;
        for (const auto& r : reports)
          rows.push_back(TableRow{r.spec.n(), r.s, r.spec.m(),
                                  static_cast<double>(r.entropy.entropy), r.entropy.estimate,
                                  r.period_digits});
        *sink << format_table(rows);
      } else {
        write_json(sink, to_json(std::span<const CandidateReport>(reports)));
      }
      return kOk;
    }

    if (stats->parsed()) {
      GeneratorState g = make_generator(spec, modulus, seed_vector, seed, stream_id);
      const std::vector<double> draws = draw_units(g, count);
      std::vector<TestResult> results;
      results.push_back(chisq_uniform(draws, bins));
      results.push_back(serial_pairs(std::span<const double>(draws).first(draws.size() & ~std::size_t{1}), grid));
      std::vector<std::size_t> lags;
      for (std::size_t k = 1; k <= max_lag; ++k) lags.push_back(k);
      for (auto& r : autocorrelation(draws, lags)) results.push_back(std::move(r));
      nlohmann::json j = to_json(std::span<const TestResult>(results));
      j["spec"] = to_json(spec);
      j["draws"] = count;
      Sink sink(io, out, false);
      write_json(sink, j);
      return j["pass"].get<bool>() ? kOk : kFailed;
    }

    if (bench->parsed()) {
      const BigInt k = parse_bigint(k_text);
      if (k < 0) throw UsageError("--k must be non-negative");
      GeneratorState a = make_generator(spec, modulus, seed_vector, seed, stream_id);
      GeneratorState b = a;
      using clock = std::chrono::steady_clock;
      auto t0 = clock::now();
      a.skip(k);
      const double skip_s = std::chrono::duration<double>(clock::now() - t0).count();
      nlohmann::json j = {{"schema", "mixmax.skip_bench/1"},
                          {"spec", to_json(spec)},
                          {"k", to_decimal(k)},
                          {"skip_seconds", skip_s}};
      if (mpz_sizeinbase(k.get_mpz_t(), 2) <= 40) {
        const std::uint64_t steps = to_u64(k);
        t0 = clock::now();
        for (std::uint64_t i = 0; i < steps; ++i) b.step();
        j["sequential_seconds"] = std::chrono::duration<double>(clock::now() - t0).count();
        j["agree"] = a.vector().size() == b.vector().size() &&
                     std::equal(a.vector().begin(), a.vector().end(), b.vector().begin());
      } else {
        j["sequential_seconds"] = nullptr;
        j["agree"] = nullptr;
      }
      Sink sink(io, out, false);
      write_json(sink, j);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InsufficientDraws& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace mixmax::cli
