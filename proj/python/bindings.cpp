#include "susy_damp/commands.hpp"
#include "susy_damp/core.hpp"
#include "susy_damp/errors.hpp"
#include "susy_damp/modes.hpp"
#include "susy_damp/oracle.hpp"
#include "susy_damp/riccati.hpp"
#include "susy_damp/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace susy_damp;

namespace {

std::optional<RiccatiParam> maybe_gamma(std::optional<double> gamma) {
    if (!gamma) return std::nullopt;
    return RiccatiParam(*gamma);
}

// Evaluates y, y', y'' over an array of times; NaN inside the singular band.
py::dict eval_array(const ModeSpec& spec, const py::array_t<double, py::array::c_style | py::array::forcecast>& ts) {
    const auto n = static_cast<std::size_t>(ts.size());
    py::array_t<double> y(n), dy(n), d2y(n);
    py::array_t<bool> singular(n);
    const double* t = ts.data();
    auto yv = y.mutable_unchecked<1>();
    auto dv = dy.mutable_unchecked<1>();
    auto d2v = d2y.mutable_unchecked<1>();
    auto sv = singular.mutable_unchecked<1>();
    {
        py::gil_scoped_release release;
        for (std::size_t i = 0; i < n; ++i) {
            const bool bad = spec.riccati() && spec.riccati()->is_singular(t[i]);
            sv(i) = bad;
            if (bad) {
                yv(i) = dv(i) = d2v(i) = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            const ModeEval e = eval_mode(spec, t[i]);
            yv(i) = e.y;
            dv(i) = e.dy;
            d2v(i) = e.d2y;
        }
    }
    py::dict out;
    out["y"] = y;
    out["dy"] = dy;
    out["d2y"] = d2y;
    out["singular"] = singular;
    return out;
}

std::string table_csv(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

py::dict report_dict(const CheckReport& r) {
    py::dict wp;
    wp["beta"] = r.worst_point.beta;
    wp["omega0"] = r.worst_point.omega0;
    wp["gamma"] = r.worst_point.gamma;
    wp["t"] = r.worst_point.t;
    py::dict d;
    d["check_name"] = r.check_name;
    d["max_residual"] = r.max_residual;
    d["threshold"] = r.threshold;
    d["passed"] = r.passed;
    d["worst_point"] = wp;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Riccati factorization of the free damped oscillator";
    m.attr("__version__") = SUSY_DAMP_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<SingularTime>(m, "SingularTime", base.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
    py::register_exception<DerivativeUnavailable>(m, "DerivativeUnavailable", base.ptr());
    py::register_exception<SingularInterval>(m, "SingularInterval", base.ptr());
    py::register_exception<StepFailure>(m, "StepFailure", base.ptr());
    py::register_exception<cli::UsageError>(m, "UsageError", base.ptr());
    py::register_exception<cli::IoError>(m, "IoError", base.ptr());

    py::class_<DampingParams>(m, "DampingParams")
        .def_static("from_omega0", &DampingParams::from_omega0, py::arg("beta"), py::arg("omega0"))
        .def_static("from_omega0_sq", &DampingParams::from_omega0_sq, py::arg("beta"), py::arg("omega0_sq"))
        .def_static("from_alpha_sq", &DampingParams::from_alpha_sq, py::arg("beta"), py::arg("alpha_sq"))
        .def_property_readonly("beta", &DampingParams::beta)
        .def_property_readonly("omega0", &DampingParams::omega0)
        .def_property_readonly("omega0_sq", &DampingParams::omega0_sq)
        .def_property_readonly("alpha_sq", &DampingParams::alpha_sq)
        .def("regime", [](const DampingParams& p) { return std::string(to_string(classify_regime(p).tag)); })
        .def("__repr__", [](const DampingParams& p) {
            return "DampingParams(beta=" + format_number(p.beta()) + ", omega0_sq=" + format_number(p.omega0_sq()) + ")";
        });

    py::class_<RiccatiParam>(m, "RiccatiParam")
        .def(py::init<double>(), py::arg("gamma"))
        .def_property_readonly("gamma", &RiccatiParam::gamma)
        .def_property_readonly("time_scale", &RiccatiParam::time_scale)
        .def_property_readonly("t_star", &RiccatiParam::t_star)
        .def("is_singular", &RiccatiParam::is_singular, py::arg("t"));

    m.def("h", [](double gamma, double t) { return h_eval(RiccatiSolution::general(RiccatiParam(gamma)), t); },
          py::arg("gamma"), py::arg("t"));
    m.def("riccati_residual",
          [](double gamma, double t) { return riccati_residual(RiccatiSolution::general(RiccatiParam(gamma)), t); },
          py::arg("gamma"), py::arg("t"));
    m.def("blow_up_time", [](double gamma) { return blow_up_time(RiccatiParam(gamma)); }, py::arg("gamma"));

    m.def("ab_to_amplitude_phase",
          [](const DampingParams& p, double A, double B) {
              const AmpPhase c = ab_to_amplitude_phase({A, B}, classify_regime(p));
              return py::make_tuple(c.amplitude, c.phase);
          },
          py::arg("params"), py::arg("A"), py::arg("B"));
    m.def("amplitude_phase_to_ab",
          [](const DampingParams& p, double amp, double phase) {
              const AB c = amplitude_phase_to_ab({amp, phase}, classify_regime(p));
              return py::make_tuple(c.A, c.B);
          },
          py::arg("params"), py::arg("amplitude"), py::arg("phase"));

    py::class_<ModeSpec>(m, "ModeSpec")
        .def_static("seed_ab", [](const DampingParams& p, double A, double B) { return ModeSpec::seed(p, AB{A, B}); },
                    py::arg("params"), py::arg("A"), py::arg("B"))
        .def_static("seed_amp_phase",
                    [](const DampingParams& p, double amp, double phase) { return ModeSpec::seed(p, AmpPhase{amp, phase}); },
                    py::arg("params"), py::arg("amplitude"), py::arg("phase"))
        .def_static("tilde_ab",
                    [](const DampingParams& p, double A, double B, double gamma) {
                        return ModeSpec::tilde(p, AB{A, B}, RiccatiParam(gamma));
                    },
                    py::arg("params"), py::arg("A"), py::arg("B"), py::arg("gamma"))
        .def_static("tilde_amp_phase",
                    [](const DampingParams& p, double amp, double phase, double gamma) {
                        return ModeSpec::tilde(p, AmpPhase{amp, phase}, RiccatiParam(gamma));
                    },
                    py::arg("params"), py::arg("amplitude"), py::arg("phase"), py::arg("gamma"))
        .def_static("critical_tilde",
                    [](const DampingParams& p, double A, double D, double gamma) {
                        return ModeSpec::critical_tilde(p, A, D, RiccatiParam(gamma));
                    },
                    py::arg("params"), py::arg("A"), py::arg("D"), py::arg("gamma"))
        .def_property_readonly("params", &ModeSpec::params)
        .def_property_readonly("family", [](const ModeSpec& s) { return s.family() == Family::Seed ? "seed" : "tilde"; })
        .def_property_readonly("gamma",
                               [](const ModeSpec& s) -> std::optional<double> {
                                   if (!s.riccati()) return std::nullopt;
                                   return s.riccati()->gamma();
                               })
        .def("with_gamma", [](const ModeSpec& s, std::optional<double> g) { return s.with_gamma(maybe_gamma(g)); },
             py::arg("gamma"))
        .def("__call__",
             [](const ModeSpec& s, double t) {
                 const ModeEval e = eval_mode(s, t);
                 return py::make_tuple(e.y, e.dy, e.d2y);
             },
             py::arg("t"), "(y, y', y'') at t; raises SingularTime near t*.")
        .def("evaluate", &eval_array, py::arg("t"),
             "Dict of y, dy, d2y and singular arrays; NaN where singular.")
        .def("acceleration", [](const ModeSpec& s, double t) { return antirestoring_acceleration(s, t); },
             py::arg("t"));

    m.def("critical_second_solution",
          [](const DampingParams& p, double gamma, double D, double t) {
              const ModeEval e = critical_second_solution(p, RiccatiParam(gamma), D, t);
              return py::make_tuple(e.y, e.dy, e.d2y);
          },
          py::arg("params"), py::arg("gamma"), py::arg("D"), py::arg("t"));

    m.def("integrate",
          [](double beta, double omega0_sq, std::optional<double> gamma, double t0, double y0, double dy0,
             std::vector<double> grid, double rel_tol, double abs_tol) {
              IVP ivp{beta, omega0_sq, gamma, t0, y0, dy0, grid.empty() ? t0 : grid.back()};
              Trajectory tr;
              {
                  py::gil_scoped_release release;
                  tr = integrate(ivp, Tolerances{rel_tol, abs_tol}, grid);
              }
              return py::make_tuple(py::array(py::cast(tr.ts)), py::array(py::cast(tr.ys)), py::array(py::cast(tr.dys)));
          },
          py::arg("beta"), py::arg("omega0_sq"), py::arg("gamma") = py::none(), py::kw_only(), py::arg("t0"),
          py::arg("y0"), py::arg("dy0"), py::arg("grid"), py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12,
          "Adaptive DP5(4) solution sampled on grid (which ends the integration).");

    m.def("scopes", [] {
        std::vector<std::string> out;
        for (auto s : scope_names()) out.emplace_back(s);
        return out;
    });
    m.def("verify",
          [](const std::string& scope, std::uint64_t seed) {
              const auto parsed = parse_scope(scope);
              if (!parsed) throw cli::UsageError("unknown scope: " + scope);
              std::vector<CheckReport> reports;
              {
                  py::gil_scoped_release release;
                  reports = run_suite(*parsed, seed);
              }
              py::list out;
              for (const auto& r : reports) out.append(report_dict(r));
              return out;
          },
          py::arg("scope") = "all", py::arg("seed") = 0);

    m.def("figure_csv", [](int n) { return table_csv(cli::figure_table(n)); }, py::arg("n"));
    m.def("sweep_csv",
          [](std::vector<double> gammas, const std::string& metric, std::optional<double> beta,
             std::optional<double> omega0, std::optional<double> omega0_sq, double t) {
              const auto parsed = cli::parse_metric(metric);
              if (!parsed) throw cli::UsageError("unknown metric: " + metric);
              cli::SweepRequest req;
              req.gammas = std::move(gammas);
              req.metric = *parsed;
              req.mode.beta = beta;
              req.mode.omega0 = omega0;
              req.mode.omega0_sq = omega0_sq;
              req.t = t;
              return table_csv(cli::sweep_table(req));
          },
          py::arg("gammas"), py::arg("metric") = "value_at_t", py::kw_only(), py::arg("beta") = py::none(),
          py::arg("omega0") = py::none(), py::arg("omega0_sq") = py::none(), py::arg("t") = 0.0);
}
