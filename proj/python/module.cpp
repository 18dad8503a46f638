// Python bindings for the core operations: field arithmetic, measures,
// integrals and delta pairings. LC numbers cross the boundary as objects
// with text round-tripping; extended reals surface as Python floats.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "civita/delta.hpp"
#include "civita/integrate.hpp"
#include "civita/json_io.hpp"
#include "civita/lc_expr.hpp"
#include "civita/suites.hpp"

namespace py = pybind11;
using namespace civita;

namespace {

Config make_config(int depth, double zeta) { return Config{depth, zeta}; }

double ext_to_float(const ExtReal& e) { return e.to_double(); }

LCNumber lc_from_text(const std::string& text, const Config& cfg) {
    return parse_number(text, cfg);
}

IntegrateOptions options_for(const Config& cfg, double tol) {
    IntegrateOptions o;
    o.cfg = cfg;
    o.tol = tol;
    o.quad_tol = std::min(tol, 1e-10);
    return o;
}

} // namespace

PYBIND11_MODULE(pycivita, m) {
    m.doc() = "Levi-Civita field arithmetic with a real-valued measure and integral";

    py::class_<Config>(m, "Config")
        .def(py::init(&make_config), py::arg("depth") = 16, py::arg("zeta") = 1e-13)
        .def_readonly("depth", &Config::depth)
        .def_readonly("zeta", &Config::zeta)
        .def_property_readonly("exact", &Config::exact);

    py::class_<Rational>(m, "Rational")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den") = 1)
        .def_property_readonly("num", &Rational::num)
        .def_property_readonly("den", &Rational::den)
        .def("__float__", &Rational::to_double)
        .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
        .def("__str__", &Rational::str);

    py::class_<LCNumber>(m, "LCNumber")
        .def(py::init(&lc_from_text), py::arg("text"), py::arg("config") = Config{})
        .def_static("d", &LCNumber::d, py::arg("config") = Config{})
        .def_static(
            "real",
            [](double v, const Config& cfg) { return LCNumber::real(Coeff(v), cfg); },
            py::arg("value"), py::arg("config") = Config{})
        .def_static(
            "rational",
            [](std::int64_t n, std::int64_t d, const Config& cfg) {
                return LCNumber::real(Coeff(Rational(n, d)), cfg);
            },
            py::arg("num"), py::arg("den") = 1, py::arg("config") = Config{})
        .def("__add__", [](const LCNumber& a, const LCNumber& b) { return a + b; })
        .def("__sub__", [](const LCNumber& a, const LCNumber& b) { return a - b; })
        .def("__mul__", [](const LCNumber& a, const LCNumber& b) { return a * b; })
        .def("__truediv__", [](const LCNumber& a, const LCNumber& b) { return a / b; })
        .def("__neg__", [](const LCNumber& a) { return -a; })
        .def("__eq__", [](const LCNumber& a, const LCNumber& b) { return a == b; })
        .def("__lt__", [](const LCNumber& a, const LCNumber& b) { return a < b; })
        .def("__le__", [](const LCNumber& a, const LCNumber& b) { return a <= b; })
        .def("__str__", &LCNumber::str)
        .def("__repr__", [](const LCNumber& x) { return "LCNumber(\"" + x.str() + "\")"; })
        .def("is_zero", &LCNumber::is_zero)
        .def("coefficient",
             [](const LCNumber& x, const Rational& q) {
                 return x.coefficient(q).to_double();
             })
        .def("valuation", [](const LCNumber& x) -> std::optional<Rational> {
            return x.valuation();
        });

    m.def("inv", &inv, "field inverse");
    m.def("root", &root, py::arg("x"), py::arg("n"), "positive n-th root");
    m.def("power", [](const LCNumber& x, long long k) { return civita::pow(x, k); },
          py::arg("x"), py::arg("k"));
    m.def("standard_part",
          [](const LCNumber& x) { return ext_to_float(standard_part(x)); });
    m.def("classify", [](const LCNumber& x) { return std::string(to_string(classify(x))); });
    m.def("monad_eq", &monad_eq);
    m.def("eval_lc", [](const std::string& text, const Config& cfg) {
        return eval_lc_expression(text, cfg).str();
    }, py::arg("text"), py::arg("config") = Config{});

    py::class_<RealExpr>(m, "RealExpr")
        .def(py::init(&parse_expr), py::arg("text"))
        .def("__str__", &render)
        .def("diff", [](const RealExpr& e) { return diff(e); })
        .def("__call__", [](const RealExpr& e, double x) { return eval_real(e, x); });
    m.def("quad", &quad, py::arg("expr"), py::arg("a"), py::arg("b"),
          py::arg("tol") = 1e-10, py::arg("max_evals") = 1000000L);

    py::class_<ExtensionFn>(m, "ExtensionFn")
        .def(py::init<RealExpr, std::optional<int>, double, double>(), py::arg("base"),
             py::arg("order"), py::arg("lo"), py::arg("hi"));
    m.def("extend", &extend, py::arg("fn"), py::arg("x"));

    py::class_<Interval>(m, "Interval")
        .def(py::init<LCNumber, LCNumber, bool, bool>(), py::arg("lo"), py::arg("hi"),
             py::arg("lo_closed") = true, py::arg("hi_closed") = true)
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("length", &Interval::length);

    py::class_<MeasurableSet>(m, "MeasurableSet")
        .def(py::init<std::vector<Interval>, std::optional<TailCertificate>>(),
             py::arg("intervals"), py::arg("tail") = std::nullopt)
        .def_static(
            "from_json",
            [](const std::string& text, const Config& cfg) {
                return measurable_set_from_json(json::parse(text), cfg);
            },
            py::arg("text"), py::arg("config") = Config{})
        .def("to_json",
             [](const MeasurableSet& A) { return measurable_set_to_json(A).dump(); })
        .def_property_readonly("intervals", &MeasurableSet::intervals);

    py::class_<TailCertificate>(m, "TailCertificate")
        .def(py::init([](const Rational& bound, const std::string& desc) {
                 return TailCertificate{bound, desc};
             }),
             py::arg("bound_exponent"), py::arg("description") = "");

    m.def("m_measure", &m_measure);
    m.def("mL_measure", [](const MeasurableSet& A) { return ext_to_float(mL_measure(A)); });
    m.def("translate", &translate);
    m.def("scale", &scale);
    m.def("scale_mL",
          [](const MeasurableSet& A, const LCNumber& x) {
              return ext_to_float(scale_report(A, x).measured);
          });
    m.def("shadow", [](const MeasurableSet& A) {
        Shadow s = shadow(A);
        std::vector<std::pair<double, double>> intervals;
        for (const auto& iv : s.intervals.intervals())
            intervals.emplace_back(iv.lo.to_double(), iv.hi.to_double());
        std::vector<double> points;
        for (const auto& p : s.points) points.push_back(p.to_double());
        return py::make_tuple(intervals, points,
                              lebesgue_measure(s.intervals).to_double());
    });

    py::class_<PowerSeries>(m, "PowerSeries")
        .def(py::init<Interval, LCNumber, std::vector<LCNumber>>(), py::arg("domain"),
             py::arg("center"), py::arg("coeffs"))
        .def("__call__", [](const PowerSeries& f, const LCNumber& x) { return ps_eval(f, x); })
        .def("derivative", &ps_derivative)
        .def("antiderivative", &ps_antiderivative)
        .def("integral", &ps_integral, py::arg("interval"));

    py::class_<Piecewise>(m, "Piecewise")
        .def(py::init<std::vector<PowerSeries>>(), py::arg("pieces"))
        .def("__call__",
             [](const Piecewise& f, const LCNumber& x) { return f(x); });

    m.def("integral_simple", &integral_simple, py::arg("f"), py::arg("set"));

    m.def(
        "m_integral_extension",
        [](const ExtensionFn& f, const Interval& iv, const Config& cfg, double tol) {
            return ext_to_float(m_integral(f, Region::interval(iv), options_for(cfg, tol)));
        },
        py::arg("fn"), py::arg("interval"), py::arg("config") = Config{},
        py::arg("tol") = 1e-9);
    m.def(
        "m_integral_simple",
        [](const Piecewise& f, const MeasurableSet& A, const Config& cfg, double tol) {
            return ext_to_float(m_integral(f, Region::measurable(A), options_for(cfg, tol)));
        },
        py::arg("fn"), py::arg("set"), py::arg("config") = Config{}, py::arg("tol") = 1e-9);

    py::class_<DeltaSpec>(m, "DeltaSpec")
        .def_readonly("center", &DeltaSpec::center)
        .def_readonly("half_width", &DeltaSpec::half_width)
        .def_readonly("smoothness", &DeltaSpec::smoothness);

    m.def("make_delta", [](const LCNumber& r, const LCNumber& h, int k) {
        auto [spec, bump] = make_delta(r, h, k);
        return py::make_tuple(spec, bump);
    });
    m.def("pair_delta", &pair_delta, py::arg("delta"), py::arg("fn"), py::arg("tol") = 1e-9);
    m.def("pair_delta_derivative", &pair_delta_derivative, py::arg("delta"), py::arg("m"),
          py::arg("fn"), py::arg("tol") = 1e-9);
    m.def("bump_normalizer", &bump_normalizer, py::arg("k"));

    py::class_<SuiteResult>(m, "SuiteResult")
        .def_readonly("name", &SuiteResult::name)
        .def_readonly("passed", &SuiteResult::passed)
        .def_readonly("checks", &SuiteResult::checks)
        .def_readonly("failures", &SuiteResult::failures)
        .def_readonly("note", &SuiteResult::note);
    m.def("suite_names", &suite_names);
    m.def("run_suite", &run_suite, py::arg("name"), py::arg("seed") = 0);
}
