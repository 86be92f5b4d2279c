#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "riemannflow/integrator.hpp"
#include "riemannflow/surface.hpp"

namespace rflow {

// Closed-form period of orbits that do not cross the branch cut:
//   T = 2 sqrt(pi) cos(pi eps/(4+2 eps)) Gamma((3+eps)/(2+eps)) / Gamma((4+eps)/(4+2 eps))
double analytic_period(double eps);

struct PeriodResult {
    bool closed = false;
    double period = 0.0;
};

// Closure time of the orbit launched on-shell from x0 (positive
// direction). Not closed when no Closure event fires within budget.
PeriodResult numeric_period(const SurfacePoint& x0, double eps, const IntegratorConfig& cfg);

// Turning points with nonzero winding number of the trajectory lifted
// to (log r, theta) coordinates, reported as (pair, side).
std::vector<std::pair<int, Side>> enclosed_turning_points(const Trajectory& traj, double eps);

// Largest |sheet index| reached by the UNWRAPPED angle. For integer eps
// this measures angular excursion (full windings around the origin)
// rather than physical sheets.
int max_sheet_depth(const Trajectory& traj);

// Continuous tower coordinate nu with nu(theta_N) = N; the turning
// points of pair n sit at nu = n and nu = -n-1.
double tower_coordinate(double theta, double eps);

// True when the orbit's unwrapped angle ventures to the tower angles of
// pair n+1 (nu >= n+1 or nu <= -n-2). This, not sheet depth, is what
// separates Region R_n from R_{n+1}: for small eps several pairs share
// a sheet.
bool exceeds_pair_band(const Trajectory& traj, int pair_n, double eps);

// Symmetric point-set distance between the trajectory and its PT
// reflection, normalized by the orbit diameter.
double pt_asymmetry(const Trajectory& traj, double eps, const IntegratorConfig& cfg);

struct OrbitClassification {
    enum class Verdict { Closed, Terminating, Escaping, Undetermined };
    Verdict verdict = Verdict::Undetermined;
    bool pt_symmetric = false;

    // Closed
    double period = 0.0;
    std::set<int> sheets_visited;
    std::vector<std::pair<int, Side>> enclosed;

    // Terminating: crossing of the principal-sheet negative-imaginary
    // axis at -i s_value.
    int pair_index = -1;
    double s_value = 0.0;

    // Escaping
    double asymptotic_angle = 0.0;
    double blowup_time = 0.0;

    std::string reason;  // Undetermined
};

OrbitClassification classify(const PhaseState& launch, double eps, const IntegratorConfig& cfg);

// Launch at -i y0 on the principal sheet, positive direction.
OrbitClassification classify_axis(double y0, double eps, const IntegratorConfig& cfg);

struct CriticalPointResult {
    enum class Status { Ok, BracketInvalid, NotMonotone };
    Status status = Status::BracketInvalid;
    double y = 0.0;  // critical ordinate: the point is -i y
};

// Bisection for the separatrix ordinate x_n on the negative-imaginary
// axis: the predicate is "the launch at -i y exceeds sheet depth
// `boundary` before closing". An 8-point scan checks monotonicity of
// the predicate across the bracket first.
CriticalPointResult critical_point(double eps, int boundary, double y_lo, double y_hi, double tol,
                                   const IntegratorConfig& cfg);

struct TerminatingResult {
    enum class Status { Ok, NoTermination };
    Status status = Status::NoTermination;
    double s = 0.0;  // crossing is at -i s on the principal sheet
    Trajectory traj;
};

// Shoot from the pair-n right turning point along the terminating
// curve; report where the path crosses the negative-imaginary axis on
// the principal sheet and verify it terminates at the mirror turning
// point.
TerminatingResult terminating_start(int pair_n, double eps, const IntegratorConfig& cfg,
                                    double delta = 1e-4);

struct EscapeRay {
    int tower_index;
    double theta;  // unwrapped asymptotic angle
    int sheet;
};

// Asymptotic ray angles theta = -pi/2 + (2N-1) pi / eps for N in
// [n_lo, n_hi]. Requires eps > 0.
std::vector<EscapeRay> escape_angles(double eps, int n_lo, int n_hi);

struct EscapeFit {
    enum class Status { Ok, InsufficientTail };
    Status status = Status::InsufficientTail;
    double t_star = 0.0;          // finite blowup time
    double fitted_exponent = 0.0; // slope of log r vs log(t_star - t); expect -2/eps
    double residual = 0.0;        // RMS fit residual
};

// Least-squares fit of the blowup law on the escape tail (samples with
// r >= 100, at least 20 of them), with t_star estimated jointly.
EscapeFit fit_escape(const Trajectory& traj, double eps);

// Residual of the asymptotic ray phase condition |1 + e^{i pi eps/2} e^{i eps theta}|.
double escape_phase_residual(double theta, double eps);

}  // namespace rflow
