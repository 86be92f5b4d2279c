#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riemannflow/integrator.hpp"
#include "riemannflow/sweep.hpp"

namespace rflow {

// CSV schema (stable): header
//   t,re_x,im_x,r,theta,sheet,re_p,im_p,energy_err
// one row per sample, 12 significant digits, newline-terminated; events
// appended as comment lines "# event,<kind>,<t>,<payload>".
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// Reads a file produced by write_trajectory_csv; samples round-trip to
// the printed precision, events are restored by kind and time.
Trajectory read_trajectory_csv(const std::string& path, double eps_hint = 0.0);

struct PlotOptions {
    double width = 720.0;
    double height = 720.0;
    std::string title;
    std::vector<TurningPoint> turning_points;  // drawn as filled dots
    bool draw_branch_cut = true;
};

void emit_svg_plot(const Trajectory& traj, const std::string& path, const PlotOptions& opt);
void emit_svg_plot(const SweepResult& sweep, const std::string& path, const PlotOptions& opt);

// Accepts a decimal literal or the tokens "1/pi" and "1+sqrt2".
double parse_epsilon(const std::string& text);

}  // namespace rflow
