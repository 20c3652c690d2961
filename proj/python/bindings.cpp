#include "sumset/error.hpp"
#include "sumset/recursive.hpp"
#include "sumset/report.hpp"
#include "sumset/spec.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sumset;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them so both front ends share one serializer.
std::string dump(const Json& j) { return j.dump(); }

std::vector<IntPolynomial> polys_of(const std::string& text) { return parse_polynomial_list(text); }

Coloring coloring_of(const std::string& spec, std::uint64_t seed) {
  SpecDefaults d;
  d.seed = seed;
  return coloring_from_spec(spec, d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of sumset_ramsey";

  // Module-lifetime reference; instances carry the error kind as `.kind`.
  static PyObject* error_type = PyErr_NewException("sumset_ramsey._core.SumsetError", PyExc_RuntimeError, nullptr);
  m.attr("SumsetError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(std::string(e.what()));
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<Coloring>(m, "Coloring")
      .def(py::init([](const std::string& spec, std::uint64_t seed) { return coloring_of(spec, seed); }),
           py::arg("spec"), py::arg("seed") = 0)
      .def("__call__", &Coloring::operator(), py::arg("z"))
      .def_property_readonly("palette_size", &Coloring::palette_size)
      .def_property_readonly("descriptor", [](const Coloring& c) { return c.descriptor().canonical(); })
      .def("colors", [](const Coloring& c, std::uint64_t N) {
        const auto t = color_table(c, N);
        return std::vector<int>(t.begin(), t.end());
      }, py::arg("N"))
      .def("runlength", [](const Coloring& c, std::uint64_t N) {
        std::ostringstream out;
        write_runlength(out, c, N);
        return out.str();
      }, py::arg("N"));

  m.def("psi", [](const std::string& P, const std::string& Q, const std::string& t) {
    return psi_eval(IntPolynomial::parse(P), IntPolynomial::parse(Q), Real(t)).str(30);
  }, py::arg("P"), py::arg("Q"), py::arg("t"), "psi(t) as a decimal string; t is a decimal string");
  m.def("branch_threshold", [](const std::string& P, const std::string& Q) {
    return branch_threshold(IntPolynomial::parse(P), IntPolynomial::parse(Q));
  });
  m.def("growth_case", [](const std::string& P, const std::string& Q) {
    return std::string(to_string(psi_profile(IntPolynomial::parse(P), IntPolynomial::parse(Q)).growth));
  });
  m.def("band_offset", [](const std::string& P, const std::string& Q) {
    const BandOffset b = band_offset(IntPolynomial::parse(P), IntPolynomial::parse(Q));
    py::dict d;
    d["l"] = b.l;
    d["n0"] = b.n0;
    d["part"] = std::string(to_string(b.part));
    if (b.k1) d["k1"] = b.k1->str();
    if (b.k2) d["k2"] = b.k2->str();
    return d;
  });
  m.def("find_admissible_a0", [](const std::string& P, const std::string& Q, std::int64_t limit) {
    return find_admissible_a0(IntPolynomial::parse(P), IntPolynomial::parse(Q), limit);
  }, py::arg("P"), py::arg("Q"), py::arg("limit") = 1000000);

  m.def("search_json", [](const std::string& spec, const std::string& polys, std::uint64_t N, std::uint64_t r,
                          std::uint64_t maxC, std::size_t max_candidates, unsigned threads, std::uint64_t seed) {
    const Coloring c = coloring_of(spec, seed);
    const auto ps = polys_of(polys);
    py::gil_scoped_release release;
    const Configuration cfg = greedy_search(window(c, N), ps, r, maxC, GreedyOptions{1, max_candidates, threads});
    return dump(to_json(cfg));
  }, py::arg("spec"), py::arg("polys"), py::arg("N"), py::arg("r"), py::arg("maxC"),
        py::arg("max_candidates") = 0, py::arg("threads") = 1, py::arg("seed") = 0);

  m.def("exhaustive_json", [](const std::string& spec, const std::string& polys, std::uint64_t N, std::uint64_t r,
                              std::uint64_t sizeC, std::uint64_t seed) -> std::optional<std::string> {
    const auto cfg = exhaustive_search(window(coloring_of(spec, seed), N), polys_of(polys), r, sizeC);
    if (!cfg) return std::nullopt;
    return dump(to_json(*cfg));
  }, py::arg("spec"), py::arg("polys"), py::arg("N"), py::arg("r"), py::arg("sizeC"), py::arg("seed") = 0);

  m.def("verify", [](const std::string& spec, const std::string& polys, const std::vector<std::uint64_t>& B,
                     const std::vector<std::uint64_t>& C, std::uint64_t seed) -> std::optional<int> {
    Configuration cfg;
    cfg.B = B;
    cfg.C = C;
    cfg.polys = polys_of(polys);
    const auto color = verify_config(coloring_of(spec, seed), cfg);
    if (!color) return std::nullopt;
    return static_cast<int>(*color);
  }, py::arg("spec"), py::arg("polys"), py::arg("B"), py::arg("C"), py::arg("seed") = 0);

  m.def("audit_json", [](const std::string& spec, const std::string& polys, std::uint64_t n, std::uint64_t M,
                         std::uint64_t seed) {
    Json out = Json::array();
    for (const BadSet& bs : bad_sets_all_colors(coloring_of(spec, seed), n, polys_of(polys), M)) {
      out.push_back(to_json(bs.report));
    }
    return dump(out);
  }, py::arg("spec"), py::arg("polys"), py::arg("n"), py::arg("M"), py::arg("seed") = 0);

  m.def("bad_set", [](const std::string& spec, const std::string& polys, std::uint64_t n, int color,
                      std::uint64_t M, std::uint64_t seed) {
    return bad_set(coloring_of(spec, seed), n, polys_of(polys), static_cast<Color>(color), M).elements;
  }, py::arg("spec"), py::arg("polys"), py::arg("n"), py::arg("color"), py::arg("M"), py::arg("seed") = 0);

  m.def("longest_ap_json", [](const std::vector<std::int64_t>& S) { return dump(to_json(longest_ap(S))); });
  m.def("gowers_json", [](int k, std::uint64_t N) { return dump(to_json(gowers_threshold(k, N), N)); });

  m.def("return_set_json", [](const std::string& spec, std::int64_t a, std::int64_t b, std::int64_t h,
                              std::uint64_t M, std::uint64_t seed) {
    const Coloring c = coloring_of(spec, seed);
    const std::uint64_t N = static_cast<std::uint64_t>(h + b * static_cast<std::int64_t>(M));
    return dump(to_json(return_set(Word::from_coloring(c, N), a, b, h, M)));
  }, py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("h"), py::arg("M"), py::arg("seed") = 0);
  m.def("max_gap", [](const std::vector<std::uint64_t>& S, std::uint64_t M) { return max_gap(S, M); });
  m.def("dichotomy", [](const std::string& y, const std::string& z, std::int64_t a, std::int64_t b, std::uint64_t D,
                        std::uint64_t K) {
    const std::uint64_t N = D + static_cast<std::uint64_t>(b * (b - a)) * K;
    return dichotomy_detect(Word::from_coloring(coloring_of(y, 0), N), Word::from_coloring(coloring_of(z, 0), N), a,
                            b, D, K);
  }, py::arg("y"), py::arg("z"), py::arg("a"), py::arg("b"), py::arg("D"), py::arg("K"));

  m.def("witness_json", [](const std::string& params, bool check) {
    const WitnessParams p = WitnessParams::from_descriptor(Descriptor::parse(params));
    const Witness w = build_witness(p);
    Json j = to_json(w, p);
    if (check) j["identity"] = check_sumset_identity(p, w.B, w.C);
    return dump(j);
  }, py::arg("params"), py::arg("check") = true);
}
