#include "mixmax/generator.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <mutex>
#include <optional>
#include <string>

#include "mixmax/error.hpp"

namespace mixmax {

GeneratorState::GeneratorState(OperatorSpec spec, Modulus modulus, std::vector<Residue> a,
                               std::uint64_t counter, std::uint32_t cursor)
    : spec_(std::move(spec)),
      modulus_(modulus),
      a_(std::move(a)),
      counter_(counter),
      cursor_(cursor) {
  if (a_.size() != spec_.n()) throw InvalidArgument("state length must equal N");
  if (cursor_ < 1 || cursor_ > spec_.n()) throw RangeError("cursor outside 1..N");
  bool nonzero = false;
  for (Residue r : a_) {
    if (r.value >= modulus_.value()) throw RangeError("residue not below p");
    nonzero = nonzero || r.value != 0;
  }
  if (!nonzero) throw AllZeroSeed();

  kernel_.family = spec_.family();
  kernel_.m = reduce(spec_.m(), modulus_);
  kernel_.s = reduce(spec_.s(), modulus_);
  kernel_.diag_step = reduce(BigInt(3 * spec_.m() + spec_.b() - 2), modulus_);
  const int k = special_shift(spec_.m());
  if (k >= 0 && k < 63 && (std::uint64_t{1} << k) + 1 < modulus_.value()) kernel_.shift = k;
}

void GeneratorState::advance(std::span<Residue> v) const {
  const Modulus& p = modulus_;
  const std::size_t n = v.size();
  Residue total(0);
  for (Residue x : v) total = add_mod(total, x, p);

  const Residue old2 = v[1];
  // Rows 1 and 2 differ only in column 2.
  Residue prev = total;
  v[0] = prev;
  prev = add_mod(prev, old2, p);
  v[1] = prev;

  if (kernel_.family == Family::FourParam) {
    // row(i+1) - row(i) = (0, m, ..., m, 3m+b-2, 1, 0, ...), the m run covering columns 2..i-1.
    Residue lagged(0);      // a_2 + ... + a_{i-1}
    Residue old_i = old2;   // a_i before overwrite
    for (std::size_t i = 2; i < n; ++i) {  // produces component i+1 (1-based)
      const Residue next_old = v[i];
      Residue t = add_mod(prev, times_m(lagged), p);
      t = add_mod(t, mul_mod(kernel_.diag_step, old_i, p), p);
      t = add_mod(t, next_old, p);
      lagged = add_mod(lagged, old_i, p);
      old_i = next_old;
      v[i] = t;
      prev = t;
    }
  } else {
    // row(i+1) - row(i) = (0, m, ..., m, 1, 0, ...), the m run covering columns 2..i.
    Residue partial = old2;  // a_2 + ... + a_i
    const bool unit_m = kernel_.family == Family::TwoParam;
    for (std::size_t i = 2; i < n; ++i) {
      const Residue next_old = v[i];
      Residue t = add_mod(prev, unit_m ? partial : times_m(partial), p);
      t = add_mod(t, next_old, p);
      partial = add_mod(partial, next_old, p);
      v[i] = t;
      prev = t;
    }
  }
  if (n >= 3) v[2] = add_mod(v[2], mul_mod(kernel_.s, old2, p), p);
}

void GeneratorState::step() {
  advance(a_);
  ++counter_;
}

namespace {

// Recently used dense matrices, shared between states with the same spec and p.
std::shared_ptr<const ResidueMatrix> shared_dense(const OperatorSpec& spec, const Modulus& m) {
  struct Entry {
    OperatorSpec spec;
    Modulus modulus;
    std::shared_ptr<const ResidueMatrix> matrix;
  };
  static std::mutex mu;
  static std::deque<Entry> cache;
  std::lock_guard lock(mu);
  for (const auto& e : cache)
    if (e.spec == spec && e.modulus == m) return e.matrix;
  auto matrix = std::make_shared<const ResidueMatrix>(residue_matrix(spec, m));
  cache.push_front({spec, m, matrix});
  if (cache.size() > 4) cache.pop_back();
  return matrix;
}

}  // namespace

void GeneratorState::step_naive() {
  if (!dense_) dense_ = shared_dense(spec_, modulus_);
  a_ = apply(*dense_, a_, modulus_);
  ++counter_;
}

std::uint64_t GeneratorState::next_residue() {
  const std::uint64_t out = a_[cursor_ - 1].value;
  if (++cursor_ > a_.size()) {
    step();
    cursor_ = 1;
  }
  return out;
}

double GeneratorState::next_unit() { return to_unit(Residue(next_residue()), modulus_); }

double to_unit(Residue x, const Modulus& modulus) {
  const double u = static_cast<double>(static_cast<long double>(x.value) /
                                       static_cast<long double>(modulus.value()));
  return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

void GeneratorState::skip(const BigInt& k) {
  if (sgn(k) < 0) throw InvalidArgument("skip distance must be non-negative");
  if (sgn(k) == 0) return;
  const PolyModP chi = char_poly_mod(spec_, modulus_);
  const PolyModP r = poly_pow_mod(PolyModP{{Residue(0), Residue(1)}}, k, chi, modulus_);
  // A^k a = r(A) a, evaluated by Horner with the fast step.
  std::vector<Residue> acc(a_.size(), Residue(0));
  for (std::size_t i = r.coeffs.size(); i-- > 0;) {
    advance(acc);
    const Residue c = r.coeffs[i];
    if (c.value == 0) continue;
    for (std::size_t j = 0; j < acc.size(); ++j)
      acc[j] = add_mod(acc[j], mul_mod(c, a_[j], modulus_), modulus_);
  }
  a_ = std::move(acc);
  counter_ += static_cast<std::uint64_t>(mpz_get_ui(k.get_mpz_t()));
}

void GeneratorState::skip_by_matrix(const BigInt& k) {
  if (sgn(k) < 0) throw InvalidArgument("skip distance must be non-negative");
  a_ = apply(matrix_pow_mod(spec_, k, modulus_), a_, modulus_);
  counter_ += static_cast<std::uint64_t>(mpz_get_ui(k.get_mpz_t()));
}

GeneratorState GeneratorState::derive_stream(std::uint64_t stream_id, unsigned spacing_exp) const {
  GeneratorState out = *this;
  BigInt k = from_u64(stream_id);
  mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), spacing_exp);
  out.skip(k);
  return out;
}

// ------------------------------------------------------------ persistence

namespace {

constexpr char kMagic[4] = {'M', 'X', 'S', 'T'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint32_t kMaxDecimalLength = 4096;

std::uint8_t family_tag(Family f) {
  switch (f) {
    case Family::TwoParam: return 1;
    case Family::ThreeParam: return 2;
    case Family::FourParam: return 3;
  }
  return 0;
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_decimal(std::vector<std::uint8_t>& out, const BigInt& v) {
  const std::string s = to_decimal(v);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw FormatError("state blob is truncated");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T le() {
    auto s = take(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(s[i]) << (8 * i));
    return v;
  }
  BigInt decimal() {
    const auto len = le<std::uint32_t>();
    if (len == 0 || len > kMaxDecimalLength) throw FormatError("bad decimal field length");
    auto s = take(len);
    try {
      return parse_bigint(std::string(s.begin(), s.end()));
    } catch (const InvalidArgument&) {
      throw FormatError("bad decimal field");
    }
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> GeneratorState::save() const {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  out.push_back(family_tag(spec_.family()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec_.n()));
  put_decimal(out, spec_.s());
  put_decimal(out, spec_.m());
  put_decimal(out, spec_.b());
  put_le<std::uint64_t>(out, modulus_.value());
  put_le<std::uint64_t>(out, counter_);
  put_le<std::uint32_t>(out, cursor_);
  for (Residue r : a_) put_le<std::uint64_t>(out, r.value);
  return out;
}

GeneratorState GeneratorState::load(std::span<const std::uint8_t> blob) {
  Reader in(blob);
  auto magic = in.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad magic");
  if (in.le<std::uint8_t>() != kVersion) throw FormatError("unsupported version");
  Family family;
  switch (in.le<std::uint8_t>()) {
    case 1: family = Family::TwoParam; break;
    case 2: family = Family::ThreeParam; break;
    case 3: family = Family::FourParam; break;
    default: throw FormatError("unknown family tag");
  }
  const std::uint32_t n = in.le<std::uint32_t>();
  if (n < 2) throw FormatError("N below 2");
  BigInt s = in.decimal();
  BigInt m = in.decimal();
  BigInt b = in.decimal();
  const std::uint64_t p = in.le<std::uint64_t>();
  const std::uint64_t counter = in.le<std::uint64_t>();
  const std::uint32_t cursor = in.le<std::uint32_t>();
  if (in.remaining() != static_cast<std::size_t>(n) * 8)
    throw FormatError("residue block length does not match N");
  std::vector<Residue> a(n);
  for (auto& r : a) r = Residue(in.le<std::uint64_t>());

  std::optional<OperatorSpec> spec;
  std::optional<Modulus> modulus;
  try {
    spec.emplace(family, n, std::move(s), std::move(m), std::move(b));
    modulus.emplace(p);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid parameters in state blob: ") + e.what());
  }
  try {
    return GeneratorState(std::move(*spec), *modulus, std::move(a), counter, cursor);
  } catch (const AllZeroSeed&) {
    throw RangeError("state blob holds the all-zero vector");
  }
}

// ---------------------------------------------------------------- seeding

GeneratorState seed_from_vector(const OperatorSpec& spec, const Modulus& modulus,
                                std::span<const std::uint64_t> v) {
  if (v.size() != spec.n()) throw InvalidArgument("seed length must equal N");
  std::vector<Residue> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = reduce(v[i], modulus);
  return GeneratorState(spec, modulus, std::move(a));
}

GeneratorState seed_from_word(const OperatorSpec& spec, const Modulus& modulus, std::uint64_t w) {
  std::vector<Residue> a(spec.n());
  bool nonzero = false;
  for (auto& r : a) {
    w += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = w;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    r = reduce(z, modulus);
    nonzero = nonzero || r.value != 0;
  }
  if (!nonzero) a[0] = Residue(1);
  return GeneratorState(spec, modulus, std::move(a));
}

}  // namespace mixmax
