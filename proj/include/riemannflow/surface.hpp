#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace rflow {

using complexd = std::complex<double>;

// A position on the multi-sheeted Riemann surface of x^2 (ix)^eps.
// theta is the UNWRAPPED argument of x: it carries the full winding
// history and is never reduced mod 2*pi. The sheet index is always
// derived from theta, never stored separately.
struct SurfacePoint {
    double r = 1.0;    // |x|, must be > 0 (r = 0 is the branch point)
    double theta = 0.0;

    complexd to_complex() const { return complexd(r * std::cos(theta), r * std::sin(theta)); }
};

// Sheet 0 is theta in (-3*pi/2, pi/2); the branch cut lies on the
// positive-imaginary axis, theta = pi/2 mod 2*pi.
inline int sheet_of(double theta) {
    return static_cast<int>(std::floor((theta + 1.5 * M_PI) / (2.0 * M_PI)));
}

inline int sheet_of(const SurfacePoint& p) { return sheet_of(p.theta); }

// Lift a Cartesian complex number back onto the surface, choosing the
// unwrapped angle nearest to theta_ref (the caller must guarantee the
// true angular change from theta_ref is below pi).
inline SurfacePoint surface_from_complex(complexd x, double theta_ref) {
    const double r = std::abs(x);
    if (r <= 0.0) throw std::domain_error("surface_from_complex: branch point r = 0");
    const double dtheta =
        std::remainder(std::arg(x) - std::remainder(theta_ref, 2.0 * M_PI), 2.0 * M_PI);
    return SurfacePoint{r, theta_ref + dtheta};
}

// PT reflection x -> -conj(x): (r, theta) -> (r, -pi - theta).
// Involution; maps sheet k to sheet -k. The negative-imaginary axis on
// the principal sheet (theta = -pi/2) is the fixed set.
inline SurfacePoint pt_reflect(const SurfacePoint& p) {
    return SurfacePoint{p.r, -M_PI - p.theta};
}

// Momentum in polar form, p = a e^{i alpha}.
struct MomentumPolar {
    double a = 0.0;  // |p| >= 0
    double alpha = 0.0;

    complexd to_complex() const { return complexd(a * std::cos(alpha), a * std::sin(alpha)); }
};

inline MomentumPolar momentum_from_complex(complexd p) {
    return MomentumPolar{std::abs(p), std::arg(p)};
}

struct PhaseState {
    SurfacePoint position;
    MomentumPolar momentum;
    double time = 0.0;

    complexd x() const { return position.to_complex(); }
    complexd p() const { return momentum.to_complex(); }
};

// x^2 (ix)^eps evaluated sheet-consistently:
//   r^(2+eps) * exp(i [(2+eps) theta + eps pi/2])
// with the unwrapped theta. Principal-value complex powers would
// silently re-fold onto sheet 0, so they are never used here.
inline complexd potential_term(const SurfacePoint& pos, double eps) {
    const double mag = std::pow(pos.r, 2.0 + eps);
    const double phase = (2.0 + eps) * pos.theta + eps * M_PI / 2.0;
    return complexd(mag * std::cos(phase), mag * std::sin(phase));
}

// True when x^2 (ix)^eps is unchanged by theta -> theta + 2 pi, i.e.
// eps is an integer and the surface collapses to a single sheet. Sheet
// bookkeeping still runs, but closure/identity tests must then compare
// angles modulo 2 pi.
inline bool potential_single_valued(double eps) {
    return std::abs(eps - std::round(eps)) < 1e-12;
}

// Sheet label as reported to the outside: on a single-sheeted surface
// every point is on sheet 0 no matter how far theta has wound.
inline int physical_sheet(double theta, double eps) {
    return potential_single_valued(eps) ? 0 : sheet_of(theta);
}

// H = p^2 + x^2 (ix)^eps, sheet-consistent.
inline complexd energy(const PhaseState& s, double eps) {
    const double a2 = s.momentum.a * s.momentum.a;
    const double ph = 2.0 * s.momentum.alpha;
    return complexd(a2 * std::cos(ph), a2 * std::sin(ph)) + potential_term(s.position, eps);
}

// Normalized energy defect |E - 1| / max(1, |x^2 (ix)^eps|). The
// normalization keeps the diagnostic meaningful at large radius, where
// p^2 and the potential term cancel to machine precision.
inline double energy_defect(const PhaseState& s, double eps) {
    const complexd v = potential_term(s.position, eps);
    const double a2 = s.momentum.a * s.momentum.a;
    const double scale = std::max(1.0, std::abs(v));
    return std::abs(complexd(a2 * std::cos(2.0 * s.momentum.alpha),
                             a2 * std::sin(2.0 * s.momentum.alpha)) +
                    v - 1.0) /
           scale;
}

// Newton's law: xddot = -2 (2+eps) x (ix)^eps, sheet-consistent.
inline complexd acceleration(const SurfacePoint& pos, double eps) {
    const double mag = 2.0 * (2.0 + eps) * std::pow(pos.r, 1.0 + eps);
    const double phase = (1.0 + eps) * pos.theta + eps * M_PI / 2.0;
    return complexd(-mag * std::cos(phase), -mag * std::sin(phase));
}

enum class Side { Left, Right };

// Turning points solve x^2 (ix)^eps = 1; they all lie on the unit
// circle at the tower angles theta_N = (4N - eps) pi / (2 eps + 4),
// N integer. Pair n consists of N = n (right member) and N = -n-1
// (left member); the two are PT reflections of one another.
struct TurningPoint {
    int pair = 0;
    Side side = Side::Right;
    SurfacePoint location;
};

inline double turning_angle(int tower_index, double eps) {
    if (eps <= -2.0) throw std::domain_error("turning_angle: requires eps > -2");
    return (4.0 * tower_index - eps) * M_PI / (2.0 * eps + 4.0);
}

inline TurningPoint turning_point(int pair_n, Side side, double eps) {
    if (pair_n < 0) throw std::domain_error("turning_point: pair index must be >= 0");
    const int N = (side == Side::Right) ? pair_n : -pair_n - 1;
    return TurningPoint{pair_n, side, SurfacePoint{1.0, turning_angle(N, eps)}};
}

// Map a tower index back to (pair, side).
inline std::pair<int, Side> pair_of_tower_index(int N) {
    return (N >= 0) ? std::pair<int, Side>{N, Side::Right}
                    : std::pair<int, Side>{-N - 1, Side::Left};
}

// Angle of the terminating curve at a turning point relative to the
// real axis: pi eps / (4 + 2 eps).
inline double turning_point_slope(double eps) {
    if (eps <= -2.0) throw std::domain_error("turning_point_slope: requires eps > -2");
    return M_PI * eps / (4.0 + 2.0 * eps);
}

}  // namespace rflow
