#include <doctest.h>

#include <cmath>

#include "riemannflow/analysis.hpp"

using namespace rflow;

TEST_CASE("numeric periods agree with the closed form inside region 0") {
    const IntegratorConfig cfg;
    const struct { double eps, y0; } runs[] = {
        {0.0, 1.5}, {0.1, 0.12}, {1.0 / M_PI, 0.4}, {1.0, 1.2},
    };
    for (const auto& rn : runs) {
        const PeriodResult pr = numeric_period(SurfacePoint{rn.y0, -M_PI / 2.0}, rn.eps, cfg);
        REQUIRE(pr.closed);
        CHECK(std::abs(pr.period - analytic_period(rn.eps)) <= 1e-6 * pr.period);
    }
}

TEST_CASE("the harmonic ellipse encloses the pair-0 turning points") {
    const IntegratorConfig cfg;
    const Trajectory traj = integrate(launch_on_shell(SurfacePoint{1.0, -M_PI / 2.0}, +1, 0.0),
                                      0.0, cfg);
    REQUIRE(traj.closed());
    const auto enc = enclosed_turning_points(traj, 0.0);
    REQUIRE(enc.size() == 2);
    CHECK(enc[0] == std::pair<int, Side>{0, Side::Right});
    CHECK(enc[1] == std::pair<int, Side>{0, Side::Left});
}

TEST_CASE("the three-sheet orbit encloses pair 1 and only pair 1") {
    // Launch below the first separatrix at eps = 1/pi: the orbit visits
    // sheets -1, 0, 1 and winds around the second pair of turning points.
    const double eps = 1.0 / M_PI;
    const IntegratorConfig cfg;
    const OrbitClassification oc = classify_axis(0.68, eps, cfg);
    REQUIRE(oc.verdict == OrbitClassification::Verdict::Closed);
    CHECK(oc.sheets_visited == std::set<int>{-1, 0, 1});
    REQUIRE(oc.enclosed.size() == 2);
    CHECK(oc.enclosed[0].first == 1);
    CHECK(oc.enclosed[1].first == 1);
    CHECK(oc.pt_symmetric);
}

TEST_CASE("classification matches the small-eps phase portrait") {
    const IntegratorConfig cfg;
    const OrbitClassification closed = classify_axis(0.2, 0.1, cfg);
    CHECK(closed.verdict == OrbitClassification::Verdict::Closed);
    CHECK(closed.pt_symmetric);

    const OrbitClassification open = classify_axis(0.2, -0.1, cfg);
    CHECK(open.verdict != OrbitClassification::Verdict::Closed);
    CHECK(!open.pt_symmetric);
}

TEST_CASE("pt_asymmetry is near zero only for symmetric orbits") {
    const IntegratorConfig cfg;
    const Trajectory sym = integrate(launch_on_shell(SurfacePoint{0.5, -M_PI / 2.0}, +1, 0.1),
                                     0.1, cfg);
    REQUIRE(sym.closed());
    CHECK(pt_asymmetry(sym, 0.1, cfg) < 1e-6);

    IntegratorConfig open_cfg;
    open_cfg.max_time = 12.0;
    const Trajectory open = integrate(launch_on_shell(SurfacePoint{0.2, -M_PI / 2.0}, +1, -0.1),
                                      -0.1, open_cfg);
    CHECK(pt_asymmetry(open, -0.1, open_cfg) > 1e-3);
}

TEST_CASE("separatrix band predicate distinguishes regions") {
    const double eps = 1.0 / M_PI;
    const IntegratorConfig cfg;
    // inside R0: never reaches the pair-1 tower angles
    const Trajectory r0 = integrate(launch_on_shell(SurfacePoint{0.4, -M_PI / 2.0}, +1, eps),
                                    eps, cfg);
    CHECK(!exceeds_pair_band(r0, 0, eps));
    // inside R1: passes pair 1 but not pair 2
    const Trajectory r1 = integrate(launch_on_shell(SurfacePoint{0.68, -M_PI / 2.0}, +1, eps),
                                    eps, cfg);
    CHECK(exceeds_pair_band(r1, 0, eps));
    CHECK(!exceeds_pair_band(r1, 1, eps));
    CHECK(max_sheet_depth(r1) == 1);
}

TEST_CASE("critical point searches validate their bracket") {
    const IntegratorConfig cfg;
    const auto bad = critical_point(1.0, 0, 3.0, 4.0, 1e-6, cfg);
    CHECK(bad.status != CriticalPointResult::Status::Ok);
    const auto good = critical_point(1.0, 0, 0.5, 4.0, 1e-6, cfg);
    REQUIRE(good.status == CriticalPointResult::Status::Ok);
    CHECK(good.y == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("escape ray angles and phase residual") {
    // theta = -pi/2 + (2N - 1) pi / eps
    const auto one = escape_angles(1.0, 1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].theta == doctest::Approx(M_PI / 2.0));
    const auto two = escape_angles(2.0, 0, 1);
    REQUIRE(two.size() == 2);
    CHECK(two[0].theta == doctest::Approx(-M_PI));
    CHECK(two[1].theta == doctest::Approx(0.0));
    for (const auto& ray : one) CHECK(escape_phase_residual(ray.theta, 1.0) < 1e-12);
    for (const auto& ray : two) CHECK(escape_phase_residual(ray.theta, 2.0) < 1e-12);
    CHECK(escape_phase_residual(0.3, 1.0) > 1e-2);
    CHECK_THROWS_AS(escape_angles(0.0, 0, 1), std::domain_error);
}

TEST_CASE("blowup fit recovers the escape exponent") {
    IntegratorConfig cfg;
    const auto st = launch_from_turning_point(turning_point(1, Side::Right, 1.0), 1.0, 1e-4);
    const Trajectory traj = integrate(st, 1.0, cfg);
    REQUIRE(traj.terminal()->kind == EventKind::Escape);
    const EscapeFit fit = fit_escape(traj, 1.0);
    REQUIRE(fit.status == EscapeFit::Status::Ok);
    CHECK(fit.fitted_exponent == doctest::Approx(-2.0).epsilon(0.02));
    CHECK(fit.t_star > traj.samples.back().time);
    CHECK(std::isfinite(fit.t_star));
}

TEST_CASE("no terminating path exists for pair 2 at eps = 1 + sqrt 2") {
    const double eps = 1.0 + std::sqrt(2.0);
    IntegratorConfig cfg;
    cfg.rel_tol = cfg.abs_tol = 1e-12;
    cfg.energy_tol = 1e-5;
    cfg.max_time = 400.0;
    CHECK(terminating_start(2, eps, cfg).status == TerminatingResult::Status::NoTermination);
}
