#pragma once

#include <string>
#include <vector>

#include "riemannflow/surface.hpp"

namespace rflow {

struct IntegratorConfig {
    double rel_tol = 1e-10;        // per-step relative error target
    double abs_tol = 1e-10;
    double energy_tol = 1e-8;      // max allowed normalized |E - 1|
    double max_time = 200.0;
    double escape_radius = 1e6;    // r beyond which the run is escaping
    double closure_tol = 1e-6;     // phase-space distance for closure
    double turning_tol = 1e-4;     // |p| below which termination is tested
    double max_step_angle = 0.2;   // cap on |dtheta| per step, < pi
    double event_time_tol = 1e-10; // bisection tolerance for event times
    int stop_depth = -1;           // if >= 0, stop once |sheet| exceeds this
    // Stop at the first principal-sheet crossing of the negative-
    // imaginary axis. Such crossings are perpendicular, so the rest of
    // the path is the PT mirror of the approach; shooting from turning
    // points only needs the first half.
    bool stop_at_principal_axis = false;

    void validate() const;
};

enum class EventKind {
    BranchCutCrossing,
    NegativeImagAxisCrossing,
    Closure,
    TurningTermination,
    Escape,
    EnergyFault,
};

const char* event_kind_name(EventKind k);

struct Event {
    EventKind kind;
    double time = 0.0;
    PhaseState state;

    // BranchCutCrossing: sheet_from/sheet_to differ by exactly 1,
    // direction = +1 when theta is increasing (positive sense).
    int sheet_from = 0;
    int sheet_to = 0;
    int direction = 0;

    // NegativeImagAxisCrossing: sheet index and crossing ordinate y
    // (the crossing point projects to -i y, y = r > 0).
    int sheet = 0;
    double axis_y = 0.0;

    double period = 0.0;     // Closure
    int nearest_pair = 0;    // TurningTermination
    double escape_angle = 0.0;  // Escape: final unwrapped angle
};

struct Trajectory {
    std::vector<PhaseState> samples;  // time-ordered, |dtheta| < pi between neighbors
    std::vector<Event> events;        // time-ordered
    PhaseState launch;
    double epsilon = 0.0;
    double max_energy_defect = 0.0;

    // Terminal event (Closure, TurningTermination, Escape or
    // EnergyFault), or nullptr when the run hit max_time.
    const Event* terminal() const;
    const Event* first_event(EventKind k) const;
    bool closed() const;
};

// Hamilton's equations: xdot = 2p, pdot = -(2+eps) x (ix)^eps.
struct PhaseVelocity {
    complexd xdot;
    complexd pdot;
};
PhaseVelocity derivative(const PhaseState& s, double eps);

// The same vector field in the four real polar rates
// (rdot, thetadot, adot, alphadot). Singular where a or r vanish;
// kept as a cross-check oracle for the Cartesian path.
struct PolarRates {
    double r_dot;
    double theta_dot;
    double a_dot;
    double alpha_dot;
};
PolarRates polar_derivative(const PhaseState& s, double eps);  // throws domain_error if a or r < 1e-12

// On-shell launch: p is the square root of 1 - x^2 (ix)^eps whose sign
// is selected by direction_sign (sign of Re p, or of Im p when Re p
// vanishes). Energy is exactly 1 by construction.
PhaseState launch_on_shell(const SurfacePoint& x0, int direction_sign, double eps);

// State a short time delta after rest at a turning point, via the local
// Taylor step x(delta) = x_T + xddot_T delta^2 / 2, then re-projected
// exactly onto the E = 1 shell. delta must lie in (0, 1e-3].
PhaseState launch_from_turning_point(const TurningPoint& tp, double eps, double delta);

// Adaptive Dormand-Prince 5(4) integration of the Cartesian system with
// a separately accumulated unwrapped theta. Stops at the first of
// Closure, TurningTermination, Escape, EnergyFault or max_time. All
// boundary events are located by bisection with dense re-integration.
Trajectory integrate(const PhaseState& launch, double eps, const IntegratorConfig& cfg);

// Integrate for a fixed signed duration (no terminal-event search
// beyond EnergyFault); used for time-reversal and segment checks.
Trajectory integrate_for(const PhaseState& launch, double eps, const IntegratorConfig& cfg,
                         double duration);

// Euclidean distance in (Re x, Im x, Re p, Im p).
double phase_distance(const PhaseState& a, const PhaseState& b);

// Distance from a surface point to the trajectory, refined by local
// re-integration between samples. Only trajectory arcs whose unwrapped
// angle is within pi of the query count as candidates, so matches on
// the wrong sheet are rejected.
double distance_to_trajectory(const Trajectory& traj, const SurfacePoint& query, double eps,
                              const IntegratorConfig& cfg);

}  // namespace rflow
