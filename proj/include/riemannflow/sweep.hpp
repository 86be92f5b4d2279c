#pragma once

#include <string>
#include <vector>

#include "riemannflow/analysis.hpp"

namespace rflow {

struct CriticalCurveSample {
    double epsilon = 0.0;
    double value_y = 0.0;  // curve point is -i * value_y
    std::string kind;      // "x0", "s0", "xn:<n>", "sn:<n>"
    double tolerance = 0.0;
};

struct SweepFailure {
    double epsilon = 0.0;
    std::string reason;
};

struct SweepResult {
    std::vector<CriticalCurveSample> samples;  // sorted by epsilon, no duplicates
    std::vector<SweepFailure> failures;
};

// Worker count: RIEMANN_FLOW_THREADS caps hardware concurrency.
unsigned sweep_worker_count();

// Evenly spaced grid of `count` points over [lo, hi].
std::vector<double> epsilon_grid(double lo, double hi, int count);

// x0(eps) over a grid in (0, 2): per-eps separatrix bisection with an
// auto-grown bracket, capped at y = 1e3 (Diverged beyond). Per-eps
// failures are recorded and the sweep continues.
SweepResult sweep_x0(const std::vector<double>& eps_grid, const IntegratorConfig& cfg,
                     double tol = 1e-6);

// s0(eps): terminating-trajectory shooting per grid point.
SweepResult sweep_s0(const std::vector<double>& eps_grid, const IntegratorConfig& cfg);

struct MinimumResult {
    bool ok = false;
    double eps_star = 0.0;
    double value_y_star = 0.0;
};

// Golden-section minimization of s0(eps) over [eps_lo, eps_hi];
// tolerance 1e-3 in eps.
MinimumResult find_s0_minimum(double eps_lo, double eps_hi, const IntegratorConfig& cfg,
                              double eps_tol = 1e-3);

struct GapRow {
    int n = 0;
    bool terminates = false;
    double s = 0.0;
};

struct GapTable {
    double epsilon = 0.0;
    std::vector<GapRow> rows;           // n = 0..n_max
    bool edge_found = false;
    double r0_upper_edge = 0.0;         // ordinate of the gap's lower edge
    std::vector<int> gap_order_bottom_up;  // in-gap rows sorted by descending ordinate
};

// Terminating crossings for n = 0..n_max at eps > 2, plus the upper
// edge of region R0 (the lower edge of the gap).
GapTable gap_table(double eps, int n_max, const IntegratorConfig& cfg);

}  // namespace rflow
