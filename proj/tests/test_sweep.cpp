#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "riemannflow/sweep.hpp"

using namespace rflow;

TEST_CASE("epsilon grid endpoints and spacing") {
    CHECK(epsilon_grid(0.0, 1.0, 0).empty());
    CHECK(epsilon_grid(0.3, 0.9, 1) == std::vector<double>{0.3});
    const auto g = epsilon_grid(0.2, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(0.2));
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(0.6));
}

TEST_CASE("worker count respects the environment cap") {
    setenv("RIEMANN_FLOW_THREADS", "1", 1);
    CHECK(sweep_worker_count() == 1);
    unsetenv("RIEMANN_FLOW_THREADS");
    CHECK(sweep_worker_count() >= 1);
}

TEST_CASE("x0 sweep is deterministic across worker counts") {
    const IntegratorConfig cfg;
    const auto grid = epsilon_grid(0.4, 1.0, 3);
    setenv("RIEMANN_FLOW_THREADS", "1", 1);
    const SweepResult serial = sweep_x0(grid, cfg);
    setenv("RIEMANN_FLOW_THREADS", "4", 1);
    const SweepResult parallel = sweep_x0(grid, cfg);
    unsetenv("RIEMANN_FLOW_THREADS");
    REQUIRE(serial.samples.size() == parallel.samples.size());
    for (size_t i = 0; i < serial.samples.size(); ++i) {
        CHECK(serial.samples[i].epsilon == parallel.samples[i].epsilon);
        CHECK(serial.samples[i].value_y == parallel.samples[i].value_y);
    }
    // the eps = 1 sample is the known critical point
    CHECK(serial.samples.back().value_y == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("s0 sweep tags its samples") {
    const IntegratorConfig cfg;
    const SweepResult res = sweep_s0(epsilon_grid(0.3, 0.5, 2), cfg);
    REQUIRE(res.samples.size() == 2);
    for (const auto& s : res.samples) {
        CHECK(s.kind == "s0");
        CHECK(s.value_y > 0.0);
    }
}

TEST_CASE("the s0 dip is found inside a narrow bracket") {
    const IntegratorConfig cfg;
    const MinimumResult mr = find_s0_minimum(7.0, 8.2, cfg);
    REQUIRE(mr.ok);
    CHECK(mr.eps_star == doctest::Approx(7.62547).epsilon(0.01));
    CHECK(mr.value_y_star == doctest::Approx(1.21188).epsilon(1e-3));
}

TEST_CASE("gap table requires eps above 2") {
    const IntegratorConfig cfg;
    CHECK_THROWS_AS(gap_table(1.5, 4, cfg), std::invalid_argument);
}
