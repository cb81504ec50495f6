// Python module _core. Structured results cross the boundary as JSON text
// (the same documents the CLI prints); the package wrapper decodes them.
#include "nsol/cli.hpp"
#include "nsol/json_io.hpp"
#include "nsol/suite.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nsol;

namespace {

SolenoidSpec spec_of(const std::string& text) { return spec_from_json(json::parse(text)); }

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact arithmetic for p-adic solenoid parameter sequences";
    m.attr("REPORT_SCHEMA") = kReportSchema;

    py::register_exception<RadicandMismatch>(m, "RadicandMismatch", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<CoherenceError>(m, "CoherenceError", PyExc_ValueError);
    py::register_exception<ConditionError>(m, "ConditionError", PyExc_ValueError);

    py::class_<QuadReal>(m, "QuadReal")
        .def(py::init(&QuadReal::parse), py::arg("text"))
        .def(py::init([](long v) { return QuadReal(v); }))
        .def("floor", [](const QuadReal& x) { return to_string(x.floor()); },
             "floor as a decimal string (may exceed 64 bits)")
        .def("frac", &QuadReal::frac)
        .def("conjugate", &QuadReal::conjugate)
        .def_property_readonly("radicand", &QuadReal::radicand)
        .def("__float__", &QuadReal::to_double)
        .def("__str__", &QuadReal::str)
        .def("__repr__", [](const QuadReal& x) { return "QuadReal('" + x.str() + "')"; })
        .def("__hash__", [](const QuadReal& x) { return py::hash(py::str(x.str())); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self);

    py::class_<PAdic>(m, "PAdic")
        .def_static("from_rational", [](unsigned long p, const std::string& q) {
            return PAdic::from_rational(p, parse_rat(q));
        })
        .def_property_readonly("prime", &PAdic::prime)
        .def_property_readonly("ord", [](const PAdic& x) -> py::object {
            return x.is_zero() ? py::none() : py::cast(x.ord());
        })
        .def_property_readonly("preperiod", &PAdic::preperiod)
        .def_property_readonly("period", &PAdic::period)
        .def_property_readonly("value", [](const PAdic& x) { return to_string(x.value()); })
        .def("digit", &PAdic::digit)
        .def("invert", &PAdic::invert)
        .def("negate_digits", &PAdic::negate_digits)
        .def("frac_part", [](const PAdic& x) { return x.frac_part().str(); })
        .def("truncate_sum", [](const PAdic& x, long lo, long hi) { return x.truncate_sum(lo, hi).str(); })
        .def("__eq__", [](const PAdic& a, const PAdic& b) { return a == b; })
        .def("__repr__", &PAdic::str);

    m.def("alpha_window", [](const std::string& spec, std::size_t N) { return dump(to_json(alpha_window(spec_of(spec), N))); });
    m.def("reduce_h", [](const std::string& spec, std::size_t N) { return dump(to_json(reduce_h(spec_of(spec), N))); });
    m.def("heisenberg_partner", [](const std::string& spec, std::size_t N) {
        const SolenoidSpec s = spec_of(spec);
        return dump(json{{"window", to_json(heisenberg_partner(s, N))}, {"partner_spec", to_json(heisenberg_partner_spec(s))}});
    });
    m.def("projection_partner", [](const std::string& spec, long m_, long c0, long d0, std::size_t N) {
        return dump(to_json(projection_partner(spec_of(spec), ProjectionData{m_, c0, d0}, N)));
    });
    m.def("condition_check", [](unsigned long p, long c0, long d0, unsigned long x0) {
        return condition_check(p, ProjectionData{1, c0, d0}, x0);
    });
    m.def("relate", [](const std::string& spec, std::size_t N) { return dump(to_json(relate_report(spec_of(spec), N))); });
    m.def("certificate_search",
          [](const std::string& a, const std::string& b, long max_c0, long max_d0, std::size_t max_k, std::size_t entries) {
              return dump(to_json(certificate_search(spec_of(a), spec_of(b), SearchBounds{max_c0, max_d0, max_k, entries})));
          });
    m.def("identity_suite", [](const std::string& spec, long m_, long c0, long d0, std::size_t n, std::uint64_t seed,
                               std::size_t functions, std::size_t points, std::size_t grid, double tolerance) {
        const SamplePlan plan{seed, functions, points, grid, false};
        py::gil_scoped_release release;
        const IdentityReport r = identity_suite(spec_of(spec), ProjectionData{m_, c0, d0}, n, plan);
        return dump(to_json(r, tolerance));
    });
    m.def("run_acceptance", [](std::uint64_t seed, const std::vector<int>& only, double tolerance) {
        py::gil_scoped_release release;
        return dump(to_json(run_acceptance(SuiteConfig{seed, tolerance}, only)));
    });
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    });
}
