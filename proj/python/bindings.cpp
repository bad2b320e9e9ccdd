#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mixmax/cli.hpp"
#include "mixmax/error.hpp"
#include "mixmax/galois.hpp"
#include "mixmax/generator.hpp"
#include "mixmax/operators.hpp"
#include "mixmax/spectral.hpp"
#include "mixmax/statkit.hpp"

namespace py = pybind11;
using namespace mixmax;

namespace {

OperatorSpec make_spec(const std::string& family, std::size_t n, const std::string& s,
                       const std::string& m, const std::string& b) {
  return OperatorSpec(parse_family(family), n, parse_bigint(s), parse_bigint(m), parse_bigint(b));
}

}  // namespace

PYBIND11_MODULE(_mixmax, mod) {
  mod.doc() = "MIXMAX generator core";

  py::register_exception<Error>(mod, "MixmaxError", PyExc_ValueError);

  py::class_<OperatorSpec>(mod, "OperatorSpec")
      .def(py::init(&make_spec), py::arg("family"), py::arg("n"), py::arg("s") = "0",
           py::arg("m") = "1", py::arg("b") = "0")
      .def_property_readonly("n", &OperatorSpec::n)
      .def_property_readonly("family", [](const OperatorSpec& s) { return family_name(s.family()); })
      .def_property_readonly("s", [](const OperatorSpec& s) { return to_decimal(s.s()); })
      .def_property_readonly("m", [](const OperatorSpec& s) { return to_decimal(s.m()); })
      .def_property_readonly("b", [](const OperatorSpec& s) { return to_decimal(s.b()); })
      .def("entry", [](const OperatorSpec& s, std::size_t i, std::size_t j) {
        return to_decimal(s.entry(i, j));
      })
      .def("to_json", [](const OperatorSpec& s) { return to_json(s).dump(); })
      .def(py::self == py::self);

  py::class_<Modulus>(mod, "Modulus")
      .def(py::init<std::uint64_t>(), py::arg("p") = 2305843009213693951ULL)
      .def_property_readonly("p", &Modulus::value);

  py::class_<GeneratorState>(mod, "Generator")
      .def_static("from_word",
                  [](const OperatorSpec& s, const Modulus& m, std::uint64_t w) {
                    return seed_from_word(s, m, w);
                  })
      .def_static("from_vector",
                  [](const OperatorSpec& s, const Modulus& m, std::vector<std::uint64_t> v) {
                    return seed_from_vector(s, m, v);
                  })
      .def_property_readonly("vector",
                             [](const GeneratorState& g) {
                               std::vector<std::uint64_t> out;
                               for (Residue r : g.vector()) out.push_back(r.value);
                               return out;
                             })
      .def_property_readonly("counter", &GeneratorState::counter)
      .def_property_readonly("cursor", &GeneratorState::cursor)
      .def("step", &GeneratorState::step)
      .def("step_naive", &GeneratorState::step_naive)
      .def("next_residue", &GeneratorState::next_residue)
      .def("next_unit", &GeneratorState::next_unit)
      .def("residues",
           [](GeneratorState& g, std::size_t n) {
             std::vector<std::uint64_t> out(n);
             for (auto& x : out) x = g.next_residue();
             return out;
           })
      .def("units", [](GeneratorState& g, std::size_t n) { return draw_units(g, n); })
      .def("skip", [](GeneratorState& g, const std::string& k) { g.skip(parse_bigint(k)); })
      .def("derive_stream", &GeneratorState::derive_stream, py::arg("stream_id"),
           py::arg("spacing_exp") = kDefaultStreamSpacingExp)
      .def("save",
           [](const GeneratorState& g) {
             const auto blob = g.save();
             return py::bytes(reinterpret_cast<const char*>(blob.data()), blob.size());
           })
      .def_static("load",
                  [](const py::bytes& b) {
                    const std::string s = b;
                    return GeneratorState::load(std::span<const std::uint8_t>(
                        reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
                  })
      .def(py::self == py::self);

  mod.def("det_mod", [](const OperatorSpec& s, const Modulus& m) { return det_mod(s, m).value; });
  mod.def("q_of", [](std::uint64_t p, std::size_t n) { return to_decimal(q_of(p, n)); });
  mod.def("char_poly_mod", [](const OperatorSpec& s, const Modulus& m) {
    std::vector<std::uint64_t> out;
    for (Residue r : char_poly_mod(s, m).coeffs) out.push_back(r.value);
    return out;
  });
  mod.def("certify_json", [](const OperatorSpec& s, const Modulus& m) {
    const BigInt q = q_of(m.value(), s.n());
    const FactorizationOfQ f = factorize(q);
    return to_json(certify_max_period(s, m, f)).dump();
  });
  mod.def("brute_force_period", [](const OperatorSpec& s, const Modulus& m,
                                   std::vector<std::uint64_t> seed) {
    return to_decimal(brute_force_period(s, m, seed));
  });
  mod.def("spectrum_json", [](const OperatorSpec& s) { return to_json(spectrum_report(s)).dump(); });
  mod.def("stats_json", [](std::vector<double> draws, std::size_t bins, std::size_t grid,
                           std::size_t max_lag) {
    std::vector<TestResult> results{chisq_uniform(draws, bins), serial_pairs(draws, grid)};
    std::vector<std::size_t> lags;
    for (std::size_t k = 1; k <= max_lag; ++k) lags.push_back(k);
    for (auto& r : autocorrelation(draws, lags)) results.push_back(r);
    return to_json(std::span<const TestResult>(results)).dump();
  });
  mod.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
