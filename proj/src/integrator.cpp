#include "riemannflow/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace rflow {

void IntegratorConfig::validate() const {
    if (rel_tol <= 0 || abs_tol <= 0 || energy_tol <= 0 || max_time <= 0 ||
        escape_radius <= 0 || closure_tol <= 0 || turning_tol <= 0 || event_time_tol <= 0)
        throw std::invalid_argument("IntegratorConfig: all tolerances must be positive");
    if (max_step_angle <= 0 || max_step_angle >= M_PI)
        throw std::invalid_argument("IntegratorConfig: max_step_angle must be in (0, pi)");
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::BranchCutCrossing: return "branch_cut_crossing";
        case EventKind::NegativeImagAxisCrossing: return "neg_imag_axis_crossing";
        case EventKind::Closure: return "closure";
        case EventKind::TurningTermination: return "turning_termination";
        case EventKind::Escape: return "escape";
        case EventKind::EnergyFault: return "energy_fault";
    }
    return "unknown";
}

const Event* Trajectory::terminal() const {
    if (events.empty()) return nullptr;
    const Event& e = events.back();
    switch (e.kind) {
        case EventKind::Closure:
        case EventKind::TurningTermination:
        case EventKind::Escape:
        case EventKind::EnergyFault:
            return &e;
        default:
            return nullptr;
    }
}

const Event* Trajectory::first_event(EventKind k) const {
    for (const Event& e : events)
        if (e.kind == k) return &e;
    return nullptr;
}

bool Trajectory::closed() const {
    const Event* t = terminal();
    return t != nullptr && t->kind == EventKind::Closure;
}

PhaseVelocity derivative(const PhaseState& s, double eps) {
    const complexd p = s.p();
    const double mag = (2.0 + eps) * std::pow(s.position.r, 1.0 + eps);
    const double phase = (1.0 + eps) * s.position.theta + eps * M_PI / 2.0;
    return PhaseVelocity{2.0 * p, complexd(-mag * std::cos(phase), -mag * std::sin(phase))};
}

PolarRates polar_derivative(const PhaseState& s, double eps) {
    const double r = s.position.r, theta = s.position.theta;
    const double a = s.momentum.a, alpha = s.momentum.alpha;
    if (a < 1e-12 || r < 1e-12)
        throw std::domain_error("polar_derivative: singular at a = 0 or r = 0");
    const double re1 = (2.0 + eps) * std::pow(r, eps + 1.0);
    const double shift = (eps - 2.0) * M_PI / 2.0;
    return PolarRates{
        2.0 * a * std::cos(alpha - theta),
        2.0 * a / r * std::sin(alpha - theta),
        re1 * std::cos((1.0 + eps) * theta - alpha + shift),
        re1 / a * std::sin((1.0 + eps) * theta - alpha + shift),
    };
}

PhaseState launch_on_shell(const SurfacePoint& x0, int direction_sign, double eps) {
    const complexd v = potential_term(x0, eps);
    complexd p = std::sqrt(complexd(1.0, 0.0) - v);
    const double sel = (p.real() != 0.0) ? p.real() : p.imag();
    if (direction_sign * sel < 0) p = -p;
    return PhaseState{x0, momentum_from_complex(p), 0.0};
}

PhaseState launch_from_turning_point(const TurningPoint& tp, double eps, double delta) {
    if (!(delta > 0.0 && delta <= 1e-3))
        throw std::invalid_argument("launch_from_turning_point: delta must lie in (0, 1e-3]");
    const complexd acc = acceleration(tp.location, eps);
    const complexd xc = tp.location.to_complex() + 0.5 * acc * delta * delta;
    const SurfacePoint pos = surface_from_complex(xc, tp.location.theta);
    const complexd p_taylor = 0.5 * acc * delta;
    // Exact shell projection; keep the root aligned with the Taylor momentum.
    complexd p = std::sqrt(complexd(1.0, 0.0) - potential_term(pos, eps));
    if (std::abs(p - p_taylor) > std::abs(p + p_taylor)) p = -p;
    return PhaseState{pos, momentum_from_complex(p), 0.0};
}

double phase_distance(const PhaseState& a, const PhaseState& b) {
    return std::sqrt(std::norm(a.x() - b.x()) + std::norm(a.p() - b.p()));
}

namespace {

// State vector: {Re x, Im x, Re p, Im p, theta}. The step arithmetic
// runs in extended precision: deep radial excursions reach |V| ~ 1e11,
// where double roundoff alone mints absolute energy errors far above
// energy_tol once the orbit returns to |V| ~ 1.
using real = long double;
using Vec = std::array<real, 5>;

Vec state_to_vec(const PhaseState& s) {
    const complexd x = s.x(), p = s.p();
    return Vec{x.real(), x.imag(), p.real(), p.imag(), s.position.theta};
}

PhaseState vec_to_state(const Vec& y, double t) {
    const double r = static_cast<double>(std::hypot(y[0], y[1]));
    return PhaseState{SurfacePoint{r, static_cast<double>(y[4])},
                      momentum_from_complex(complexd(static_cast<double>(y[2]),
                                                     static_cast<double>(y[3]))),
                      t};
}

Vec deriv(const Vec& y, double eps) {
    const real e = eps;
    const real r2 = y[0] * y[0] + y[1] * y[1];
    const real r = std::sqrt(r2);
    const real mag = (2.0L + e) * std::pow(r, 1.0L + e);
    const real phase = (1.0L + e) * y[4] + e * static_cast<real>(M_PI) / 2.0L;
    return Vec{
        2.0L * y[2],
        2.0L * y[3],
        -mag * std::cos(phase),
        -mag * std::sin(phase),
        2.0L * (y[3] * y[0] - y[2] * y[1]) / r2,
    };
}

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
                 A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 35.0 / 384.0 - 5179.0 / 57600.0, E3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                 E4 = 125.0 / 192.0 - 393.0 / 640.0, E5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                 E6 = 11.0 / 84.0 - 187.0 / 2100.0, E7 = -1.0 / 40.0;

struct StepResult {
    Vec y;
    double err;  // normalized error estimate
};

StepResult dp_step(const Vec& y, const Vec& k1, double h_in, double eps, double abs_tol,
                   double rel_tol) {
    const real h = h_in;
    auto axpy = [](const Vec& base, std::initializer_list<std::pair<real, const Vec*>> terms,
                   real h) {
        Vec out = base;
        for (const auto& [c, k] : terms)
            for (int i = 0; i < 5; ++i) out[i] += h * c * (*k)[i];
        return out;
    };
    const Vec k2 = deriv(axpy(y, {{A21, &k1}}, h), eps);
    const Vec k3 = deriv(axpy(y, {{A31, &k1}, {A32, &k2}}, h), eps);
    const Vec k4 = deriv(axpy(y, {{A41, &k1}, {A42, &k2}, {A43, &k3}}, h), eps);
    const Vec k5 = deriv(axpy(y, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}, h), eps);
    const Vec k6 =
        deriv(axpy(y, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}, h), eps);
    const Vec y5 = axpy(y, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}}, h);
    const Vec k7 = deriv(y5, eps);

    real err = 0.0L;
    for (int i = 0; i < 5; ++i) {
        const real e = h * (static_cast<real>(E1) * k1[i] + static_cast<real>(E3) * k3[i] +
                            static_cast<real>(E4) * k4[i] + static_cast<real>(E5) * k5[i] +
                            static_cast<real>(E6) * k6[i] + static_cast<real>(E7) * k7[i]);
        const real sc = static_cast<real>(abs_tol) +
                        static_cast<real>(rel_tol) * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += (e / sc) * (e / sc);
    }
    return StepResult{y5, static_cast<double>(std::sqrt(err / 5.0L))};
}

class Stepper {
  public:
    // Per-step error is controlled well below the configured target so
    // that the accumulated drift over O(10^3) steps stays within
    // energy_tol (the step estimate is local; global error random-walks).
    static constexpr double kSafety = 0.02;

    Stepper(double eps, const IntegratorConfig& cfg)
        : eps_(eps), cfg_(cfg), abs_eff_(cfg.abs_tol * kSafety), rel_eff_(cfg.rel_tol * kSafety) {}

    // Advance (t, y) by exactly dt (signed), adaptively.
    void advance(double& t, Vec& y, double dt) const {
        const double t_end = t + dt;
        const double dir = (dt >= 0) ? 1.0 : -1.0;
        double h = dir * std::min(1e-3, std::abs(dt));
        int guard = 0;
        while (dir * (t_end - t) > 1e-15 * std::max(1.0, std::abs(t_end))) {
            if (++guard > 1000000) throw std::runtime_error("Stepper::advance: step limit");
            const Vec k1 = deriv(y, eps_);
            h = cap_h(h, k1, dir);
            if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
            const StepResult s = dp_step(y, k1, h, eps_, abs_eff_, rel_eff_);
            if (s.err <= 1.0 && std::abs(s.y[4] - y[4]) < 0.9 * M_PI) {
                t += h;
                Vec yn = s.y;
                resync_theta(y, yn);
                y = yn;
                h = next_h(h, s.err);
            } else {
                h *= 0.5;
            }
        }
        t = t_end;
    }

    double cap_h(double h, const Vec& k1, double dir) const {
        const double th_dot = std::abs(k1[4]);
        double cap = cfg_.max_step_angle / (th_dot + 1e-300);
        return dir * std::min(std::abs(h), cap);
    }

    static double next_h(double h, double err) {
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
        return h * fac;
    }

    // Re-anchor theta on the principal-value increment across the step.
    static void resync_theta(const Vec& y_old, Vec& y_new) {
        const real re = y_new[0] * y_old[0] + y_new[1] * y_old[1];
        const real im = y_new[1] * y_old[0] - y_new[0] * y_old[1];
        y_new[4] = y_old[4] + std::atan2(im, re);
    }

    double eps_;
    IntegratorConfig cfg_;
    double abs_eff_;
    double rel_eff_;
};

int theta_cell(double theta) {
    // Cell index between consecutive axis boundaries theta = pi/2 + m pi;
    // even m boundaries are branch-cut crossings, odd m boundaries are
    // negative-imaginary-axis crossings.
    return static_cast<int>(std::floor((theta - M_PI / 2.0) / M_PI));
}

int nearest_pair_index(double theta, double eps) {
    const int N = static_cast<int>(std::lround((theta * (2.0 * eps + 4.0) / M_PI + eps) / 4.0));
    return (N >= 0) ? N : -N - 1;
}

struct Driver {
    Driver(const PhaseState& launch, double eps, const IntegratorConfig& cfg)
        : eps(eps), cfg(cfg), stepper(eps, cfg) {
        cfg.validate();
        traj.launch = launch;
        traj.epsilon = eps;
        y = state_to_vec(launch);
        t = launch.time;
        x0 = launch.x();
        p0 = launch.p();
        theta0 = launch.position.theta;
        // Launches on an axis boundary (theta = pi/2 + m pi exactly) are
        // assigned to the cell they are about to enter.
        const Vec k1 = deriv(y, eps);
        j_cur = theta_cell(y[4] + 1e-9 * ((k1[4] >= 0) ? 1.0 : -1.0));
        traj.samples.push_back(launch);
        traj.max_energy_defect = energy_defect(launch, eps);
    }

    // Bisection on a scalar function of the re-integrated state over the
    // last accepted step; returns the event time and state.
    template <typename F>
    std::pair<double, Vec> locate(const Vec& ya, double ta, double tb, F&& f) const {
        double lo = 0.0, hi = tb - ta;
        while (hi - lo > cfg.event_time_tol) {
            const double mid = 0.5 * (lo + hi);
            Vec ym = ya;
            double tm = ta;
            stepper.advance(tm, ym, mid);
            if (f(ym))
                hi = mid;
            else
                lo = mid;
        }
        Vec ye = ya;
        double te = ta;
        stepper.advance(te, ye, hi);
        return {ta + hi, ye};
    }

    void emit_boundary_event(const Vec& ya, double ta, double tb, int m) {
        const double theta_star = M_PI / 2.0 + m * M_PI;
        const bool rising = ya[4] < theta_star;
        auto crossed = [&](const Vec& v) { return rising ? v[4] >= theta_star : v[4] <= theta_star; };
        auto [te, ye] = locate(ya, ta, tb, crossed);
        const bool is_cut = (m % 2 + 2) % 2 == 0;
        Event ev{};
        ev.time = te;
        ev.state = vec_to_state(ye, te);
        if (is_cut) {
            ev.kind = EventKind::BranchCutCrossing;
            const int k_up = sheet_of(theta_star + 1e-9);
            ev.direction = rising ? +1 : -1;
            ev.sheet_from = rising ? k_up - 1 : k_up;
            ev.sheet_to = rising ? k_up : k_up - 1;
        } else {
            ev.kind = EventKind::NegativeImagAxisCrossing;
            ev.sheet = physical_sheet(theta_star, eps);
            ev.axis_y = ev.state.position.r;
        }
        // A single-valued potential has no branch cut; the boundary is
        // still used for cell bookkeeping and depth diagnostics.
        if (!(is_cut && potential_single_valued(eps))) traj.events.push_back(ev);
        // Continue from the event state, on the far side of the boundary.
        y = ye;
        t = te;
        j_cur = rising ? m : m - 1;
        if (ev.kind == EventKind::BranchCutCrossing && cfg.stop_depth >= 0 &&
            std::abs(ev.sheet_to) > cfg.stop_depth)
            depth_stop = true;
        if (ev.kind == EventKind::NegativeImagAxisCrossing && cfg.stop_at_principal_axis &&
            ev.sheet == 0)
            depth_stop = true;
    }

    bool try_closure(const Vec& ya, double ta, const Vec& yb, double tb) {
        auto g = [&](const Vec& v) {
            const complexd dx = complexd(v[0], v[1]) - x0;
            return dx.real() * p0.real() + dx.imag() * p0.imag();
        };
        const double ga = g(ya), gb = g(yb);
        if (!(closure_armed && ga < 0.0 && gb >= 0.0)) return false;
        auto [te, ye] = locate(ya, ta, tb, [&](const Vec& v) { return g(v) >= 0.0; });
        const PhaseState se = vec_to_state(ye, te);
        // Same-sheet requirement; moot when the potential is single-valued
        // (integer eps), where theta + 2 pi k is the same physical point.
        const bool same_sheet = potential_single_valued(eps)
                                    ? true
                                    : std::abs(se.position.theta - theta0) < M_PI;
        if (phase_distance(se, traj.launch) < cfg.closure_tol && same_sheet) {
            Event ev{};
            ev.kind = EventKind::Closure;
            ev.time = te;
            ev.state = se;
            ev.period = te - traj.launch.time;
            traj.samples.push_back(se);
            traj.events.push_back(ev);
            return true;
        }
        return false;
    }

    bool try_turning(const Vec& ya, double ta, const Vec& yb, double tb) {
        if (!turning_armed) return false;
        // |p| dips below tolerance only over a sliver of time near a
        // turning point, so the endpoint value is not enough: find the
        // local minimum of |p|^2 via the sign change of its derivative.
        auto pslope = [&](const Vec& v) {
            const Vec k = deriv(v, eps);
            return v[2] * k[2] + v[3] * k[3];
        };
        double te;
        Vec ye;
        const double pb = std::hypot(yb[2], yb[3]);
        if (pb < cfg.turning_tol) {
            auto below = [&](const Vec& v) { return std::hypot(v[2], v[3]) < cfg.turning_tol; };
            std::tie(te, ye) = locate(ya, ta, tb, below);
        } else if (pslope(ya) < 0.0 && pslope(yb) >= 0.0) {
            std::tie(te, ye) = locate(ya, ta, tb, [&](const Vec& v) { return pslope(v) >= 0.0; });
            if (std::hypot(ye[2], ye[3]) >= cfg.turning_tol) return false;
        } else {
            return false;
        }
        Event ev{};
        ev.kind = EventKind::TurningTermination;
        ev.time = te;
        ev.state = vec_to_state(ye, te);
        ev.nearest_pair = nearest_pair_index(ye[4], eps);
        traj.samples.push_back(ev.state);
        traj.events.push_back(ev);
        return true;
    }

    void run(double t_end, bool terminal_events) {
        const double dir = (t_end >= t) ? 1.0 : -1.0;
        double h = dir * 1e-4;
        while (dir * (t_end - t) > 1e-14 * std::max(1.0, std::abs(t_end))) {
            const Vec k1 = deriv(y, eps);
            h = stepper.cap_h(h, k1, dir);
            if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
            const StepResult s =
                dp_step(y, k1, h, eps, cfg.abs_tol * Stepper::kSafety, cfg.rel_tol * Stepper::kSafety);
            if (!(s.err <= 1.0) || std::abs(s.y[4] - y[4]) >= 0.9 * M_PI) {
                h *= 0.5;
                if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t))) {
                    push_fault(t);
                    return;
                }
                continue;
            }
            const Vec ya = y;
            const double ta = t;
            Vec yb = s.y;
            Stepper::resync_theta(ya, yb);
            const double tb = t + h;
            h = Stepper::next_h(h, s.err);

            // Closure can coincide with an axis crossing (launches sit on
            // the negative-imaginary axis), so it is tested first.
            if (terminal_events) {
                if (try_closure(ya, ta, yb, tb)) return;
                if (try_turning(ya, ta, yb, tb)) return;
            }

            // Cut / axis boundary (the angle cap allows at most one per step).
            const int jb = theta_cell(yb[4]);
            if (jb != j_cur) {
                const int m = (jb > j_cur) ? j_cur + 1 : j_cur;
                emit_boundary_event(ya, ta, tb, m);
                note_state();
                if (depth_stop || !still_ok(terminal_events)) return;
                continue;
            }

            y = yb;
            t = tb;
            note_state();
            if (!still_ok(terminal_events)) return;
        }
        // Clean stop at t_end: record the final state as a sample.
        if (traj.samples.empty() || traj.samples.back().time != t)
            traj.samples.push_back(vec_to_state(y, t));
    }

    void note_state() {
        const PhaseState s = vec_to_state(y, t);
        traj.samples.push_back(s);
        const double defect = energy_defect(s, eps);
        traj.max_energy_defect = std::max(traj.max_energy_defect, defect);
        if (phase_distance(s, traj.launch) > std::max(100.0 * cfg.closure_tol, 1e-6))
            closure_armed = true;
        const double pm = s.momentum.a;
        if (pm > std::max(10.0 * cfg.turning_tol, 0.05)) turning_armed = true;
    }

    // Escape / energy-fault terminal checks; returns false when the run ends.
    bool still_ok(bool terminal_events) {
        const PhaseState s = traj.samples.back();
        if (energy_defect(s, eps) > cfg.energy_tol) {
            push_fault(s.time);
            return false;
        }
        if (terminal_events && s.position.r > cfg.escape_radius) {
            Event ev{};
            ev.kind = EventKind::Escape;
            ev.time = s.time;
            ev.state = s;
            ev.escape_angle = s.position.theta;
            traj.events.push_back(ev);
            return false;
        }
        return true;
    }

    void push_fault(double tf) {
        Event ev{};
        ev.kind = EventKind::EnergyFault;
        ev.time = tf;
        ev.state = vec_to_state(y, tf);
        traj.events.push_back(ev);
    }

    double eps;
    IntegratorConfig cfg;
    Stepper stepper;
    Trajectory traj;
    Vec y{};
    double t = 0.0;
    complexd x0, p0;
    double theta0 = 0.0;
    int j_cur = 0;
    bool closure_armed = false;
    bool turning_armed = false;
    bool depth_stop = false;
};

}  // namespace

Trajectory integrate(const PhaseState& launch, double eps, const IntegratorConfig& cfg) {
    cfg.validate();
    if (energy_defect(launch, eps) > cfg.energy_tol)
        throw std::invalid_argument("integrate: launch state is off the E = 1 shell");
    Driver d(launch, eps, cfg);
    d.run(launch.time + cfg.max_time, /*terminal_events=*/true);
    return std::move(d.traj);
}

Trajectory integrate_for(const PhaseState& launch, double eps, const IntegratorConfig& cfg,
                         double duration) {
    cfg.validate();
    Driver d(launch, eps, cfg);
    d.run(launch.time + duration, /*terminal_events=*/false);
    return std::move(d.traj);
}

double distance_to_trajectory(const Trajectory& traj, const SurfacePoint& query, double eps,
                              const IntegratorConfig& cfg) {
    const complexd qx = query.to_complex();
    const bool fold = potential_single_valued(eps);
    const size_t n = traj.samples.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        const PhaseState& s = traj.samples[i];
        if (!fold && std::abs(s.position.theta - query.theta) > M_PI) continue;
        dist[i] = std::abs(s.x() - qx);
        best = std::min(best, dist[i]);
    }
    if (!std::isfinite(best)) return best;

    // Local minima of the discrete distance sequence; the true nearest
    // point can sit near any of them (closed orbits approach the query
    // from both ends of the sample list).
    std::vector<size_t> minima;
    for (size_t i = 0; i < n; ++i) {
        const double left = (i > 0) ? dist[i - 1] : std::numeric_limits<double>::infinity();
        const double right = (i + 1 < n) ? dist[i + 1] : std::numeric_limits<double>::infinity();
        if (std::isfinite(dist[i]) && dist[i] <= left && dist[i] <= right) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(),
              [&](size_t a, size_t b) { return dist[a] < dist[b]; });
    if (minima.size() > 8) minima.resize(8);

    // Refine over the two arcs adjacent to the best sample by golden-section
    // on the re-integrated curve.
    const Stepper stepper(eps, cfg);
    auto refine = [&](size_t ia, size_t ib) {
        if (ib >= traj.samples.size() || ia >= ib) return;
        const PhaseState& sa = traj.samples[ia];
        const double dt_full = traj.samples[ib].time - sa.time;
        if (dt_full <= 0) return;
        const Vec ya = state_to_vec(sa);
        auto dist_at = [&](double dt) {
            Vec v = ya;
            double tt = sa.time;
            stepper.advance(tt, v, dt);
            return std::abs(complexd(v[0], v[1]) - qx);
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = 0.0, b = dt_full;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = dist_at(c), fd = dist_at(d);
        for (int it = 0; it < 48 && (b - a) > 1e-13 * std::max(1.0, dt_full); ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = dist_at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = dist_at(d);
            }
        }
        best = std::min(best, std::min(fc, fd));
    };
    for (size_t i : minima) {
        if (i > 0) refine(i - 1, i);
        refine(i, i + 1);
    }
    return best;
}

}  // namespace rflow
