#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "biatom/amplitude.hpp"
#include "biatom/commands.hpp"
#include "biatom/config_io.hpp"
#include "biatom/finite_mode.hpp"
#include "biatom/measures.hpp"
#include "biatom/series.hpp"

namespace py = pybind11;
using namespace biatom;

namespace {

SystemParams system_params(double omega_bar, double g, const std::string& regime, double delta) {
    SystemParams p{omega_bar, g, LargeCavity{}};
    if (regime == "small") {
        p.regime = SmallCavity{delta};
    } else if (regime != "large") {
        throw InvalidInput("regime must be 'large' or 'small'");
    }
    ValidationReport report;
    validate_into(p, ValidationOptions{0.2, true}, report);
    if (!report.ok()) throw ValidationError(std::move(report));
    return p;
}

py::dict columns(const TimeSeries& s) {
    std::vector<double> t, re, im, f2, d, c, n;
    for (const auto& r : s.rows) {
        t.push_back(r.t);
        re.push_back(r.re_f);
        im.push_back(r.im_f);
        f2.push_back(r.abs_f_sq);
        d.push_back(r.impurity);
        c.push_back(r.concurrence);
        n.push_back(r.negativity);
    }
    py::dict out;
    out["t"] = t;
    out["re_f"] = re;
    out["im_f"] = im;
    out["abs_f_sq"] = f2;
    out["impurity"] = d;
    out["concurrence"] = c;
    out["negativity"] = n;
    out["config"] = s.header.dump();
    return out;
}

}  // namespace

PYBIND11_MODULE(_biatom, m) {
    m.doc() = "Survival amplitude and entanglement measures for two atoms in a spherical cavity";

    auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    (void)invalid;

    m.def(
        "amplitude",
        [](double t, double omega_bar, double g, const std::string& regime, double delta, double quad_tol,
           double series_tol) {
            Tolerances tol;
            tol.quad_tol = quad_tol;
            tol.series_tol = series_tol;
            return f_amplitude(t, system_params(omega_bar, g, regime, delta), tol).value;
        },
        py::arg("t"), py::arg("omega_bar") = 1.5, py::arg("g") = 1.0, py::arg("regime") = "large",
        py::arg("delta") = 0.1, py::arg("quad_tol") = 1e-10, py::arg("series_tol") = 1e-10);

    m.def(
        "g_integral",
        [](double t, double omega_bar, double g, double tol) {
            return g_integral(t, system_params(omega_bar, g, "large", 0.0), tol);
        },
        py::arg("t"), py::arg("omega_bar") = 1.5, py::arg("g") = 1.0, py::arg("tol") = 1e-10);

    m.def(
        "measures",
        [](double xi, double phi, std::complex<double> f) {
            StateSpec s{xi, phi};
            ValidationReport report;
            validate_into(s, report);
            if (!report.ok()) throw ValidationError(std::move(report));
            const auto m = biatom::measures(reduced_density(s, Amplitude{f}));
            return py::make_tuple(m.impurity, m.concurrence, m.negativity);
        },
        py::arg("xi"), py::arg("phi"), py::arg("f"), "(impurity, concurrence, negativity)");

    m.def(
        "evolve",
        [](const std::string& config_json) { return columns(evolve(parse_config(config_json).simulation)); },
        py::arg("config_json"));

    m.def(
        "evolve_csv",
        [](const std::string& config_json) {
            std::ostringstream out;
            write_csv(out, evolve(parse_config(config_json).simulation));
            return out.str();
        },
        py::arg("config_json"));

    m.def(
        "check_csv",
        [](const std::string& text) {
            std::istringstream in(text);
            return check_series(read_csv(in));
        },
        py::arg("text"), "list of invariant violations (empty when the file is valid)");

    m.def(
        "oracle_report",
        [](const std::string& config_json) { return oracle_report(parse_config(config_json)).dump(); },
        py::arg("config_json") = "{}");

    m.def("small_cavity_floor", &small_cavity_abs_sq_floor, py::arg("delta"));
}
