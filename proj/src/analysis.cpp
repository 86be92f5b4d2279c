#include "riemannflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riemannflow/gamma.hpp"

namespace rflow {

double analytic_period(double eps) {
    if (eps <= -2.0) throw std::domain_error("analytic_period: requires eps > -2");
    const double c = std::cos(M_PI * eps / (4.0 + 2.0 * eps));
    return 2.0 * std::sqrt(M_PI) * c * gamma_lanczos((3.0 + eps) / (2.0 + eps)) /
           gamma_lanczos((4.0 + eps) / (4.0 + 2.0 * eps));
}

PeriodResult numeric_period(const SurfacePoint& x0, double eps, const IntegratorConfig& cfg) {
    const Trajectory traj = integrate(launch_on_shell(x0, +1, eps), eps, cfg);
    const Event* term = traj.terminal();
    if (term == nullptr || term->kind != EventKind::Closure) return PeriodResult{false, 0.0};
    return PeriodResult{true, term->period};
}

int max_sheet_depth(const Trajectory& traj) {
    int depth = 0;
    for (const PhaseState& s : traj.samples)
        depth = std::max(depth, std::abs(sheet_of(s.position.theta)));
    return depth;
}

double tower_coordinate(double theta, double eps) {
    return ((2.0 * eps + 4.0) * theta / M_PI + eps) / 4.0;
}

bool exceeds_pair_band(const Trajectory& traj, int pair_n, double eps) {
    const double hi = pair_n + 1 - 1e-9, lo = -pair_n - 2 + 1e-9;
    for (const PhaseState& s : traj.samples) {
        const double nu = tower_coordinate(s.position.theta, eps);
        if (nu >= hi || nu <= lo) return true;
    }
    return false;
}

namespace {

// Winding orbits on a single-sheeted surface (integer eps): the lift is
// not a closed curve, so enclosure is decided by planar winding of x(t)
// around each of the |eps + 2| physically distinct turning points.
std::vector<std::pair<int, Side>> enclosed_folded(const Trajectory& traj, double eps) {
    const int period = static_cast<int>(std::lround(eps)) + 2;
    std::vector<std::pair<int, Side>> out;
    if (period <= 0) return out;
    for (int N0 = 0; N0 < period; ++N0) {
        const double thN = turning_angle(N0, eps);
        const complexd c(std::cos(thN), std::sin(thN));
        double winding = 0.0;
        complexd prev = traj.samples.front().x() - c;
        for (size_t i = 1; i < traj.samples.size(); ++i) {
            const complexd cur = traj.samples[i].x() - c;
            winding += std::arg(cur / prev);
            prev = cur;
        }
        winding += std::arg((traj.samples.front().x() - c) / prev);
        if (std::lround(winding / (2.0 * M_PI)) == 0) continue;
        // Canonical label: the representative tower index (N0 or
        // N0 - period) with the smaller pair index.
        const int pair_right = N0;                // N = N0
        const int pair_left = period - 1 - N0;    // N = N0 - period
        out.push_back(pair_right <= pair_left ? pair_of_tower_index(N0)
                                              : pair_of_tower_index(N0 - period));
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, Side>> enclosed_turning_points(const Trajectory& traj, double eps) {
    if (!traj.closed()) throw std::invalid_argument("enclosed_turning_points: trajectory not closed");
    const double net_dtheta =
        traj.samples.back().position.theta - traj.samples.front().position.theta;
    if (potential_single_valued(eps) && std::abs(net_dtheta) > M_PI) {
        auto out = enclosed_folded(traj, eps);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first
                                      : (a.second == Side::Left) < (b.second == Side::Left);
        });
        return out;
    }
    // Lift to (log r, theta); the closed curve winds around a lifted
    // turning point (0, theta_N) iff the orbit encloses it on the surface.
    std::vector<std::pair<double, double>> poly;
    poly.reserve(traj.samples.size() + 1);
    double th_min = std::numeric_limits<double>::infinity(), th_max = -th_min;
    for (const PhaseState& s : traj.samples) {
        poly.emplace_back(std::log(s.position.r), s.position.theta);
        th_min = std::min(th_min, s.position.theta);
        th_max = std::max(th_max, s.position.theta);
    }
    poly.push_back(poly.front());

    // Tower indices whose angles fall inside the curve's angular span.
    const double scale = (2.0 * eps + 4.0) / (4.0 * M_PI);
    const int N_lo = static_cast<int>(std::floor((th_min - 0.5) * scale + eps / 4.0)) - 1;
    const int N_hi = static_cast<int>(std::ceil((th_max + 0.5) * scale + eps / 4.0)) + 1;

    std::vector<std::pair<int, Side>> out;
    for (int N = N_lo; N <= N_hi; ++N) {
        const double thN = turning_angle(N, eps);
        if (thN < th_min - 0.5 || thN > th_max + 0.5) continue;
        double winding = 0.0;
        double prev = std::atan2(poly[0].second - thN, poly[0].first);
        for (size_t i = 1; i < poly.size(); ++i) {
            const double ang = std::atan2(poly[i].second - thN, poly[i].first);
            winding += std::remainder(ang - prev, 2.0 * M_PI);
            prev = ang;
        }
        if (std::lround(winding / (2.0 * M_PI)) != 0) out.push_back(pair_of_tower_index(N));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : (a.second == Side::Left) < (b.second == Side::Left);
    });
    return out;
}

double pt_asymmetry(const Trajectory& traj, double eps, const IntegratorConfig& cfg) {
    const size_t n = traj.samples.size();
    if (n < 3) return 0.0;

    double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
    for (const PhaseState& s : traj.samples) {
        const complexd x = s.x();
        re_lo = std::min(re_lo, x.real());
        re_hi = std::max(re_hi, x.real());
        im_lo = std::min(im_lo, x.imag());
        im_hi = std::max(im_hi, x.imag());
    }
    const double diameter = std::hypot(re_hi - re_lo, im_hi - im_lo);
    if (diameter <= 0.0) return 0.0;

    const size_t probes = std::min<size_t>(n, 400);
    double worst = 0.0;
    for (size_t k = 0; k < probes; ++k) {
        const size_t i = k * (n - 1) / (probes - 1 ? probes - 1 : 1);
        const SurfacePoint q = pt_reflect(traj.samples[i].position);
        worst = std::max(worst, distance_to_trajectory(traj, q, eps, cfg));
    }
    return worst / diameter;
}

OrbitClassification classify(const PhaseState& launch, double eps, const IntegratorConfig& cfg) {
    const Trajectory traj = integrate(launch, eps, cfg);
    OrbitClassification out;
    out.pt_symmetric = pt_asymmetry(traj, eps, cfg) < 1e-6;

    const Event* term = traj.terminal();
    if (term == nullptr) {
        out.verdict = OrbitClassification::Verdict::Undetermined;
        out.reason = "budget";
        return out;
    }
    switch (term->kind) {
        case EventKind::Closure:
            out.verdict = OrbitClassification::Verdict::Closed;
            out.period = term->period;
            for (const PhaseState& s : traj.samples)
                out.sheets_visited.insert(physical_sheet(s.position.theta, eps));
            out.enclosed = enclosed_turning_points(traj, eps);
            break;
        case EventKind::TurningTermination: {
            out.verdict = OrbitClassification::Verdict::Terminating;
            out.pair_index = term->nearest_pair;
            for (const Event& e : traj.events)
                if (e.kind == EventKind::NegativeImagAxisCrossing && e.sheet == 0) {
                    out.s_value = e.axis_y;
                    break;
                }
            break;
        }
        case EventKind::Escape: {
            out.verdict = OrbitClassification::Verdict::Escaping;
            out.asymptotic_angle = term->escape_angle;
            const double r = term->state.position.r;
            out.blowup_time =
                (eps > 0) ? term->time + std::pow(r, -eps / 2.0) / eps : std::numeric_limits<double>::infinity();
            break;
        }
        default:
            out.verdict = OrbitClassification::Verdict::Undetermined;
            out.reason = "energy_fault";
            break;
    }
    return out;
}

OrbitClassification classify_axis(double y0, double eps, const IntegratorConfig& cfg) {
    return classify(launch_on_shell(SurfacePoint{y0, -M_PI / 2.0}, +1, eps), eps, cfg);
}

namespace {

bool leaves_depth(double y, double eps, int boundary, const IntegratorConfig& cfg) {
    const Trajectory traj =
        integrate(launch_on_shell(SurfacePoint{y, -M_PI / 2.0}, +1, eps), eps, cfg);
    return exceeds_pair_band(traj, boundary, eps);
}

}  // namespace

CriticalPointResult critical_point(double eps, int boundary, double y_lo, double y_hi, double tol,
                                   const IntegratorConfig& cfg) {
    if (!(y_lo > 0 && y_hi > y_lo && tol > 0))
        throw std::invalid_argument("critical_point: bad bracket or tolerance");

    // Monotonicity scan: the predicate must flip exactly once across the bracket.
    bool prev = leaves_depth(y_lo, eps, boundary, cfg);
    bool last = prev;
    int flips = 0;
    for (int i = 1; i < 8; ++i) {
        const double y = y_lo + (y_hi - y_lo) * i / 7.0;
        const bool b = leaves_depth(y, eps, boundary, cfg);
        if (b != last) ++flips;
        last = b;
    }
    if (prev == last) return CriticalPointResult{CriticalPointResult::Status::BracketInvalid, 0.0};
    if (flips != 1) return CriticalPointResult{CriticalPointResult::Status::NotMonotone, 0.0};

    double lo = y_lo, hi = y_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (leaves_depth(mid, eps, boundary, cfg) == prev)
            lo = mid;
        else
            hi = mid;
    }
    return CriticalPointResult{CriticalPointResult::Status::Ok, 0.5 * (lo + hi)};
}

TerminatingResult terminating_start(int pair_n, double eps, const IntegratorConfig& cfg,
                                    double delta) {
    const TurningPoint tp = turning_point(pair_n, Side::Right, eps);
    const PhaseState st = launch_from_turning_point(tp, eps, delta);
    TerminatingResult out;
    // A principal-sheet crossing of the negative-imaginary axis is
    // perpendicular (p real there), so the remainder of the path is the
    // PT mirror of the approach and ends at rest at the mirror turning
    // point; only the first half needs to be integrated. Non-terminating
    // launches never produce such a crossing: they fault or escape first.
    IntegratorConfig half = cfg;
    half.stop_at_principal_axis = true;
    out.traj = integrate(st, eps, half);

    for (const Event& e : out.traj.events) {
        if (e.kind == EventKind::NegativeImagAxisCrossing && e.sheet == 0) {
            const complexd p = e.state.p();
            if (std::abs(p.imag()) > 1e-6 * (1.0 + std::abs(p))) break;  // not perpendicular
            out.status = TerminatingResult::Status::Ok;
            out.s = e.axis_y;
            return out;
        }
    }
    return out;
}

std::vector<EscapeRay> escape_angles(double eps, int n_lo, int n_hi) {
    if (eps <= 0) throw std::domain_error("escape_angles: requires eps > 0");
    std::vector<EscapeRay> out;
    for (int N = n_lo; N <= n_hi; ++N) {
        const double theta = -M_PI / 2.0 + (2.0 * N - 1.0) * M_PI / eps;
        out.push_back(EscapeRay{N, theta, physical_sheet(theta, eps)});
    }
    return out;
}

double escape_phase_residual(double theta, double eps) {
    const double phase = M_PI * eps / 2.0 + eps * theta;
    return std::abs(complexd(1.0, 0.0) + complexd(std::cos(phase), std::sin(phase)));
}

EscapeFit fit_escape(const Trajectory& traj, double eps) {
    EscapeFit out;
    if (eps <= 0) return out;
    std::vector<std::pair<double, double>> tail;  // (t, log r)
    for (const PhaseState& s : traj.samples)
        if (s.position.r >= 100.0) tail.emplace_back(s.time, std::log(s.position.r));
    const Event* term = traj.terminal();
    if (tail.size() < 20 || term == nullptr || term->kind != EventKind::Escape) return out;

    // Thin very long tails.
    if (tail.size() > 400) {
        std::vector<std::pair<double, double>> thin;
        for (size_t k = 0; k < 400; ++k) thin.push_back(tail[k * (tail.size() - 1) / 399]);
        tail.swap(thin);
    }

    const double t_end = tail.back().first;
    const double r_end = std::exp(tail.back().second);
    const double dt_guess = std::pow(r_end, -eps / 2.0) / eps;

    auto sse_at = [&](double t_star, double* slope_out, double* rms_out) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(tail.size());
        for (const auto& [t, lr] : tail) {
            const double lx = std::log(t_star - t);
            sx += lx;
            sy += lr;
            sxx += lx * lx;
            sxy += lx * lr;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / n;
        double sse = 0;
        for (const auto& [t, lr] : tail) {
            const double e = lr - (slope * std::log(t_star - t) + icpt);
            sse += e * e;
        }
        if (slope_out) *slope_out = slope;
        if (rms_out) *rms_out = std::sqrt(sse / n);
        return sse;
    };

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = t_end + 1e-4 * dt_guess, b = t_end + 100.0 * dt_guess;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = sse_at(c, nullptr, nullptr), fd = sse_at(d, nullptr, nullptr);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = sse_at(c, nullptr, nullptr);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = sse_at(d, nullptr, nullptr);
        }
    }
    out.t_star = 0.5 * (a + b);
    sse_at(out.t_star, &out.fitted_exponent, &out.residual);
    out.status = EscapeFit::Status::Ok;
    return out;
}

}  // namespace rflow
