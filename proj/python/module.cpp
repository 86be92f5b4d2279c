#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riemannflow/analysis.hpp"
#include "riemannflow/integrator.hpp"
#include "riemannflow/surface.hpp"
#include "riemannflow/sweep.hpp"

namespace py = pybind11;
using namespace rflow;

namespace {

IntegratorConfig config_from_kwargs(double max_time, double rel_tol, double energy_tol) {
    IntegratorConfig cfg;
    cfg.max_time = max_time;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = rel_tol;
    cfg.energy_tol = energy_tol;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_riemannflow, m) {
    m.doc() = "Complex classical trajectories on the Riemann surface of x^2 (ix)^eps";

    py::class_<SurfacePoint>(m, "SurfacePoint")
        .def(py::init<double, double>(), py::arg("r"), py::arg("theta"))
        .def_readwrite("r", &SurfacePoint::r)
        .def_readwrite("theta", &SurfacePoint::theta)
        .def("to_complex", &SurfacePoint::to_complex)
        .def_property_readonly("sheet", [](const SurfacePoint& p) { return sheet_of(p); })
        .def("__repr__", [](const SurfacePoint& p) {
            return "SurfacePoint(r=" + std::to_string(p.r) +
                   ", theta=" + std::to_string(p.theta) + ")";
        });

    py::enum_<Side>(m, "Side").value("Left", Side::Left).value("Right", Side::Right);

    py::class_<TurningPoint>(m, "TurningPoint")
        .def_readonly("pair", &TurningPoint::pair)
        .def_readonly("side", &TurningPoint::side)
        .def_readonly("location", &TurningPoint::location);

    py::class_<PhaseState>(m, "PhaseState")
        .def_readonly("position", &PhaseState::position)
        .def_readonly("time", &PhaseState::time)
        .def_property_readonly("x", &PhaseState::x)
        .def_property_readonly("p", &PhaseState::p);

    py::enum_<EventKind>(m, "EventKind")
        .value("BranchCutCrossing", EventKind::BranchCutCrossing)
        .value("NegativeImagAxisCrossing", EventKind::NegativeImagAxisCrossing)
        .value("Closure", EventKind::Closure)
        .value("TurningTermination", EventKind::TurningTermination)
        .value("Escape", EventKind::Escape)
        .value("EnergyFault", EventKind::EnergyFault);

    py::class_<Event>(m, "Event")
        .def_readonly("kind", &Event::kind)
        .def_readonly("time", &Event::time)
        .def_readonly("state", &Event::state)
        .def_readonly("sheet_from", &Event::sheet_from)
        .def_readonly("sheet_to", &Event::sheet_to)
        .def_readonly("sheet", &Event::sheet)
        .def_readonly("axis_y", &Event::axis_y)
        .def_readonly("period", &Event::period)
        .def_readonly("escape_angle", &Event::escape_angle);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("events", &Trajectory::events)
        .def_readonly("epsilon", &Trajectory::epsilon)
        .def_readonly("max_energy_defect", &Trajectory::max_energy_defect)
        .def("closed", &Trajectory::closed);

    m.def("sheet_of", py::overload_cast<double>(&sheet_of), py::arg("theta"));
    m.def("pt_reflect", &pt_reflect, py::arg("point"));
    m.def(
        "energy",
        [](double r, double theta, std::complex<double> p, double eps) {
            PhaseState s;
            s.position = SurfacePoint{r, theta};
            s.momentum = momentum_from_complex(p);
            return energy(s, eps);
        },
        py::arg("r"), py::arg("theta"), py::arg("p"), py::arg("eps"));
    m.def("turning_point", &turning_point, py::arg("pair"), py::arg("side"), py::arg("eps"));
    m.def("turning_angle", &turning_angle, py::arg("tower_index"), py::arg("eps"));
    m.def("analytic_period", &analytic_period, py::arg("eps"));

    m.def(
        "integrate",
        [](double r, double theta, int direction, double eps, double max_time, double rel_tol,
           double energy_tol) {
            const auto cfg = config_from_kwargs(max_time, rel_tol, energy_tol);
            return integrate(launch_on_shell(SurfacePoint{r, theta}, direction, eps), eps, cfg);
        },
        py::arg("r"), py::arg("theta"), py::arg("direction"), py::arg("eps"),
        py::arg("max_time") = 200.0, py::arg("rel_tol") = 1e-10, py::arg("energy_tol") = 1e-8);

    py::class_<OrbitClassification> classification(m, "OrbitClassification");
    py::enum_<OrbitClassification::Verdict>(classification, "Verdict")
        .value("Closed", OrbitClassification::Verdict::Closed)
        .value("Terminating", OrbitClassification::Verdict::Terminating)
        .value("Escaping", OrbitClassification::Verdict::Escaping)
        .value("Undetermined", OrbitClassification::Verdict::Undetermined);
    classification.def_readonly("verdict", &OrbitClassification::verdict)
        .def_readonly("pt_symmetric", &OrbitClassification::pt_symmetric)
        .def_readonly("period", &OrbitClassification::period)
        .def_readonly("sheets_visited", &OrbitClassification::sheets_visited)
        .def_readonly("enclosed", &OrbitClassification::enclosed)
        .def_readonly("pair_index", &OrbitClassification::pair_index)
        .def_readonly("s_value", &OrbitClassification::s_value)
        .def_readonly("asymptotic_angle", &OrbitClassification::asymptotic_angle)
        .def_readonly("blowup_time", &OrbitClassification::blowup_time)
        .def_readonly("reason", &OrbitClassification::reason);

    m.def(
        "classify_axis",
        [](double y0, double eps, double max_time) {
            return classify_axis(y0, eps, config_from_kwargs(max_time, 1e-10, 1e-8));
        },
        py::arg("y0"), py::arg("eps"), py::arg("max_time") = 200.0);

    m.def(
        "terminating_start",
        [](int pair_n, double eps, double max_time) {
            const auto res =
                terminating_start(pair_n, eps, config_from_kwargs(max_time, 1e-10, 1e-8));
            return py::make_tuple(res.status == TerminatingResult::Status::Ok, res.s);
        },
        py::arg("pair"), py::arg("eps"), py::arg("max_time") = 200.0);

    m.def(
        "critical_point",
        [](double eps, int boundary, double y_lo, double y_hi, double tol, double max_time) {
            const auto res = critical_point(eps, boundary, y_lo, y_hi, tol,
                                            config_from_kwargs(max_time, 1e-10, 1e-8));
            return py::make_tuple(res.status == CriticalPointResult::Status::Ok, res.y);
        },
        py::arg("eps"), py::arg("boundary"), py::arg("y_lo"), py::arg("y_hi"),
        py::arg("tol") = 1e-6, py::arg("max_time") = 200.0);

    m.def(
        "escape_angles",
        [](double eps, int n_lo, int n_hi) {
            std::vector<py::tuple> out;
            for (const auto& ray : escape_angles(eps, n_lo, n_hi))
                out.push_back(py::make_tuple(ray.tower_index, ray.theta, ray.sheet));
            return out;
        },
        py::arg("eps"), py::arg("n_lo"), py::arg("n_hi"));

    py::class_<CriticalCurveSample>(m, "CriticalCurveSample")
        .def_readonly("epsilon", &CriticalCurveSample::epsilon)
        .def_readonly("value_y", &CriticalCurveSample::value_y)
        .def_readonly("kind", &CriticalCurveSample::kind)
        .def_readonly("tolerance", &CriticalCurveSample::tolerance);

    py::class_<SweepFailure>(m, "SweepFailure")
        .def_readonly("epsilon", &SweepFailure::epsilon)
        .def_readonly("reason", &SweepFailure::reason);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("samples", &SweepResult::samples)
        .def_readonly("failures", &SweepResult::failures);

    m.def("epsilon_grid", &epsilon_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));
    m.def(
        "sweep_x0",
        [](const std::vector<double>& grid, double tol, double max_time) {
            return sweep_x0(grid, config_from_kwargs(max_time, 1e-10, 1e-8), tol);
        },
        py::arg("grid"), py::arg("tol") = 1e-6, py::arg("max_time") = 200.0);
    m.def(
        "sweep_s0",
        [](const std::vector<double>& grid, double max_time) {
            return sweep_s0(grid, config_from_kwargs(max_time, 1e-10, 1e-8));
        },
        py::arg("grid"), py::arg("max_time") = 200.0);
    m.def(
        "find_s0_minimum",
        [](double eps_lo, double eps_hi, double eps_tol, double max_time) {
            const auto res = find_s0_minimum(eps_lo, eps_hi,
                                             config_from_kwargs(max_time, 1e-10, 1e-8), eps_tol);
            return py::make_tuple(res.ok, res.eps_star, res.value_y_star);
        },
        py::arg("eps_lo"), py::arg("eps_hi"), py::arg("eps_tol") = 1e-3,
        py::arg("max_time") = 200.0);
}
