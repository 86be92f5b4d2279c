#include "riemannflow/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace rflow {

unsigned sweep_worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RIEMANN_FLOW_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

std::vector<double> epsilon_grid(double lo, double hi, int count) {
    std::vector<double> grid;
    if (count <= 0) return grid;
    if (count == 1) return {lo};
    grid.reserve(count);
    for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
    return grid;
}

namespace {

// Runs fn(i) for i in [0, n) on a bounded pool; slot-indexed results
// keep the output identical to a serial run.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    const unsigned workers = std::min<size_t>(sweep_worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct SlotOutcome {
    bool ok = false;
    CriticalCurveSample sample;
    std::string failure;
};

SweepResult merge_slots(const std::vector<double>& grid, std::vector<SlotOutcome>&& slots) {
    SweepResult out;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].ok)
            out.samples.push_back(slots[i].sample);
        else
            out.failures.push_back(SweepFailure{grid[i], slots[i].failure});
    }
    return out;
}

bool closes_enclosing_pair0(double y, double eps, const IntegratorConfig& cfg) {
    const Trajectory traj =
        integrate(launch_on_shell(SurfacePoint{y, -M_PI / 2.0}, +1, eps), eps, cfg);
    if (!traj.closed()) return false;
    for (const auto& [pair, side] : enclosed_turning_points(traj, eps))
        if (pair == 0) return true;
    return false;
}

}  // namespace

SweepResult sweep_x0(const std::vector<double>& eps_grid, const IntegratorConfig& cfg,
                     double tol) {
    std::vector<SlotOutcome> slots(eps_grid.size());
    parallel_for(eps_grid.size(), [&](size_t i) {
        const double eps = eps_grid[i];
        SlotOutcome& slot = slots[i];
        try {
            // Grow the bracket geometrically; cap at y = 1e3.
            const double y_lo = 0.05;
            double y_hi = 1.0;
            auto leaves = [&](double y) {
                return exceeds_pair_band(
                    integrate(launch_on_shell(SurfacePoint{y, -M_PI / 2.0}, +1, eps), eps, cfg),
                    0, eps);
            };
            if (leaves(y_lo)) {
                slot.failure = "bracket: principal-sheet predicate already true at y_lo";
                return;
            }
            while (y_hi <= 1e3 && !leaves(y_hi)) y_hi *= 2.0;
            if (y_hi > 1e3) {
                slot.failure = "Diverged";
                return;
            }
            double lo = y_hi / 2.0, hi = y_hi;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                (leaves(mid) ? hi : lo) = mid;
            }
            slot.ok = true;
            slot.sample = CriticalCurveSample{eps, 0.5 * (lo + hi), "x0", tol};
        } catch (const std::exception& e) {
            slot.failure = e.what();
        }
    });
    return merge_slots(eps_grid, std::move(slots));
}

SweepResult sweep_s0(const std::vector<double>& eps_grid, const IntegratorConfig& cfg) {
    std::vector<SlotOutcome> slots(eps_grid.size());
    parallel_for(eps_grid.size(), [&](size_t i) {
        const double eps = eps_grid[i];
        SlotOutcome& slot = slots[i];
        try {
            const TerminatingResult res = terminating_start(0, eps, cfg);
            if (res.status == TerminatingResult::Status::Ok) {
                slot.ok = true;
                slot.sample = CriticalCurveSample{eps, res.s, "s0", cfg.event_time_tol};
            } else {
                slot.failure = "NoTermination";
            }
        } catch (const std::exception& e) {
            slot.failure = e.what();
        }
    });
    return merge_slots(eps_grid, std::move(slots));
}

MinimumResult find_s0_minimum(double eps_lo, double eps_hi, const IntegratorConfig& cfg,
                              double eps_tol) {
    // The crossing sits at -i s; "minimum" means the lowest point on the
    // axis, i.e. the most negative signed coordinate -s.
    auto objective = [&](double eps) {
        const TerminatingResult res = terminating_start(0, eps, cfg);
        if (res.status != TerminatingResult::Status::Ok)
            return std::numeric_limits<double>::infinity();
        return -res.s;
    };
    const double f_lo = objective(eps_lo), f_hi = objective(eps_hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) return MinimumResult{};

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = eps_lo, b = eps_hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > eps_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    MinimumResult out;
    out.eps_star = 0.5 * (a + b);
    const double f_star = objective(out.eps_star);
    out.value_y_star = -f_star;  // report the positive ordinate of -i y*
    out.ok = std::isfinite(f_star) && f_star <= f_lo && f_star <= f_hi;
    return out;
}

GapTable gap_table(double eps, int n_max, const IntegratorConfig& cfg) {
    if (eps <= 2.0) throw std::invalid_argument("gap_table: requires eps > 2");
    GapTable table;
    table.epsilon = eps;
    table.rows.resize(n_max + 1);

    parallel_for(static_cast<size_t>(n_max) + 1, [&](size_t i) {
        GapRow& row = table.rows[i];
        row.n = static_cast<int>(i);
        try {
            const TerminatingResult res = terminating_start(row.n, eps, cfg);
            if (res.status == TerminatingResult::Status::Ok) {
                row.terminates = true;
                row.s = res.s;
            }
        } catch (const std::exception&) {
            row.terminates = false;
        }
    });

    // Lower edge of the gap = upper edge of R0: bisect on "the launch at
    // -i y closes around pair 0" between the widest in-gap crossing and
    // a point safely inside R0 (just above s0). R0 orbits near the edge
    // swing out to r in the hundreds, so the bisection needs the
    // tightest step control and a closure window wide enough to absorb
    // the energy drift minted out there.
    if (table.rows[0].terminates) {
        IntegratorConfig ecfg = cfg;
        ecfg.rel_tol = std::min(cfg.rel_tol, 1e-15);
        ecfg.abs_tol = std::min(cfg.abs_tol, 1e-15);
        ecfg.closure_tol = std::max(cfg.closure_tol, 1e-4);
        ecfg.energy_tol = std::max(cfg.energy_tol, 1e-4);
        double lo = 0.0;
        for (const GapRow& row : table.rows)
            if (row.n > 0 && row.terminates) lo = std::max(lo, row.s);
        lo = (lo > 0.0) ? 1.05 * lo : 0.02;
        double hi = 0.95 * table.rows[0].s;
        if (lo < hi && !closes_enclosing_pair0(lo, eps, ecfg) &&
            closes_enclosing_pair0(hi, eps, ecfg)) {
            while (hi - lo > 1e-3) {
                const double mid = 0.5 * (lo + hi);
                (closes_enclosing_pair0(mid, eps, ecfg) ? hi : lo) = mid;
            }
            table.edge_found = true;
            table.r0_upper_edge = 0.5 * (lo + hi);
        }
    }

    for (const GapRow& row : table.rows)
        if (row.n > 0 && row.terminates &&
            (!table.edge_found || row.s < table.r0_upper_edge))
            table.gap_order_bottom_up.push_back(row.n);
    std::sort(table.gap_order_bottom_up.begin(), table.gap_order_bottom_up.end(),
              [&](int a, int b) { return table.rows[a].s > table.rows[b].s; });
    return table;
}

}  // namespace rflow
