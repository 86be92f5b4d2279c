#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riemannflow/analysis.hpp"
#include "riemannflow/io.hpp"
#include "riemannflow/surface.hpp"
#include "riemannflow/sweep.hpp"

using json = nlohmann::json;
using namespace rflow;

namespace {

struct RunConfig {
    std::string epsilon = "0";
    double y0 = 1.0;
    double re = 0.0, im = 0.0;
    bool cartesian = false;
    double rel_tol = 1e-10, abs_tol = 1e-10, energy_tol = 1e-8;
    double max_time = 200.0, escape_radius = 1e6;
    double closure_tol = 1e-6, turning_tol = 1e-4, max_step_angle = 0.2;
    double event_time_tol = 1e-10;
    int n = 0, nmax = 8, boundary = 0, steps = 21;
    double y_lo = 0.05, y_hi = 10.0, tol = 1e-6;
    double eps_lo = 3.0, eps_hi = 12.0;
    double delta = 1e-4;
    std::string out;

    IntegratorConfig integrator() const {
        IntegratorConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.energy_tol = energy_tol;
        cfg.max_time = max_time;
        cfg.escape_radius = escape_radius;
        cfg.closure_tol = closure_tol;
        cfg.turning_tol = turning_tol;
        cfg.max_step_angle = max_step_angle;
        cfg.event_time_tol = event_time_tol;
        return cfg;
    }
    double eps() const { return parse_epsilon(epsilon); }
};

void load_config_file(const std::string& path, RunConfig& rc) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    f >> j;
    for (const auto& [key, val] : j.items()) {
        if (key == "epsilon")
            rc.epsilon = val.is_string() ? val.get<std::string>() : std::to_string(val.get<double>());
        else if (key == "y0") rc.y0 = val.get<double>();
        else if (key == "re") { rc.re = val.get<double>(); rc.cartesian = true; }
        else if (key == "im") { rc.im = val.get<double>(); rc.cartesian = true; }
        else if (key == "rel_tol") rc.rel_tol = val.get<double>();
        else if (key == "abs_tol") rc.abs_tol = val.get<double>();
        else if (key == "energy_tol") rc.energy_tol = val.get<double>();
        else if (key == "max_time") rc.max_time = val.get<double>();
        else if (key == "escape_radius") rc.escape_radius = val.get<double>();
        else if (key == "closure_tol") rc.closure_tol = val.get<double>();
        else if (key == "turning_tol") rc.turning_tol = val.get<double>();
        else if (key == "max_step_angle") rc.max_step_angle = val.get<double>();
        else if (key == "event_time_tol") rc.event_time_tol = val.get<double>();
        else if (key == "n") rc.n = val.get<int>();
        else if (key == "nmax") rc.nmax = val.get<int>();
        else if (key == "boundary") rc.boundary = val.get<int>();
        else if (key == "steps") rc.steps = val.get<int>();
        else if (key == "y_lo") rc.y_lo = val.get<double>();
        else if (key == "y_hi") rc.y_hi = val.get<double>();
        else if (key == "tol") rc.tol = val.get<double>();
        else if (key == "eps_lo") rc.eps_lo = val.get<double>();
        else if (key == "eps_hi") rc.eps_hi = val.get<double>();
        else if (key == "delta") rc.delta = val.get<double>();
        else if (key == "out") rc.out = val.get<std::string>();
        else
            throw CLI::ValidationError("--config", "unknown key: " + key);
    }
}

PhaseState make_launch(const RunConfig& rc, double eps) {
    if (rc.cartesian) {
        const complexd x(rc.re, rc.im);
        return launch_on_shell(surface_from_complex(x, std::arg(x)), +1, eps);
    }
    return launch_on_shell(SurfacePoint{rc.y0, -M_PI / 2.0}, +1, eps);
}

void add_integrator_flags(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--rel-tol", rc.rel_tol);
    cmd->add_option("--abs-tol", rc.abs_tol);
    cmd->add_option("--energy-tol", rc.energy_tol);
    cmd->add_option("--tmax", rc.max_time, "integration time budget");
    cmd->add_option("--escape-radius", rc.escape_radius);
    cmd->add_option("--closure-tol", rc.closure_tol);
    cmd->add_option("--turning-tol", rc.turning_tol);
    cmd->add_option("--max-step-angle", rc.max_step_angle);
}

json sweep_to_json(const SweepResult& sweep, const std::string& kind) {
    json j;
    j["kind"] = kind;
    j["samples"] = json::array();
    for (const auto& s : sweep.samples)
        j["samples"].push_back(
            {{"epsilon", s.epsilon}, {"value_y", s.value_y}, {"kind", s.kind}, {"tolerance", s.tolerance}});
    j["failures"] = json::array();
    for (const auto& fl : sweep.failures)
        j["failures"].push_back({{"epsilon", fl.epsilon}, {"reason", fl.reason}});
    return j;
}

SweepResult sweep_from_json(const json& j) {
    SweepResult sweep;
    for (const auto& s : j.at("samples"))
        sweep.samples.push_back(CriticalCurveSample{s.at("epsilon").get<double>(),
                                                    s.at("value_y").get<double>(),
                                                    s.value("kind", std::string("x0")),
                                                    s.value("tolerance", 0.0)});
    return sweep;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

const char* verdict_name(OrbitClassification::Verdict v) {
    switch (v) {
        case OrbitClassification::Verdict::Closed: return "closed";
        case OrbitClassification::Verdict::Terminating: return "terminating";
        case OrbitClassification::Verdict::Escaping: return "escaping";
        default: return "undetermined";
    }
}

std::vector<TurningPoint> visible_turning_points(double eps, int nmax) {
    std::vector<TurningPoint> tps;
    for (int n = 0; n <= nmax; ++n) {
        tps.push_back(turning_point(n, Side::Right, eps));
        tps.push_back(turning_point(n, Side::Left, eps));
    }
    return tps;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig rc;

    // The config file seeds defaults; explicit flags override it.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], rc);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
        }
    }

    CLI::App app{"Complex classical trajectories of H = p^2 + x^2 (ix)^eps on its Riemann surface"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (keys match RunConfig fields)");

    auto add_common = [&](CLI::App* cmd, bool with_initial) {
        cmd->add_option("--config", config_path);
        cmd->add_option("--epsilon", rc.epsilon, "deformation parameter (number, 1/pi or 1+sqrt2)");
        if (with_initial) {
            cmd->add_option("--y0", rc.y0, "launch at -i*y0 on the principal sheet");
            cmd->add_option("--re", rc.re)->each([&](const std::string&) { rc.cartesian = true; });
            cmd->add_option("--im", rc.im)->each([&](const std::string&) { rc.cartesian = true; });
        }
        add_integrator_flags(cmd, rc);
    };

    auto* cmd_traj = app.add_subcommand("trajectory", "integrate one launch and write CSV");
    add_common(cmd_traj, true);
    cmd_traj->add_option("--out", rc.out, "output CSV path");
    std::string svg_out;
    cmd_traj->add_option("--svg", svg_out, "also render an SVG plot");

    auto* cmd_period = app.add_subcommand("period", "analytic vs numeric period");
    add_common(cmd_period, true);

    auto* cmd_tp = app.add_subcommand("turning-points", "tower of turning points");
    add_common(cmd_tp, false);
    cmd_tp->add_option("--nmax", rc.nmax);
    cmd_tp->add_option("--out", rc.out);

    auto* cmd_crit = app.add_subcommand("critical", "separatrix ordinate x_n by bisection");
    add_common(cmd_crit, false);
    cmd_crit->add_option("--boundary", rc.boundary);
    cmd_crit->add_option("--ylo", rc.y_lo);
    cmd_crit->add_option("--yhi", rc.y_hi);
    cmd_crit->add_option("--tol", rc.tol);

    auto* cmd_term = app.add_subcommand("terminate", "terminating trajectory start s_n");
    add_common(cmd_term, false);
    cmd_term->add_option("--n", rc.n);
    cmd_term->add_option("--delta", rc.delta);
    cmd_term->add_option("--out", rc.out, "write the terminating trajectory CSV");

    auto* cmd_escape = app.add_subcommand("escape", "asymptotic ray angles and blowup fit");
    add_common(cmd_escape, false);
    int ray_lo = 0, ray_hi = 1;
    bool do_fit = false;
    cmd_escape->add_option("--n-lo", ray_lo);
    cmd_escape->add_option("--n-hi", ray_hi);
    cmd_escape->add_flag("--fit", do_fit, "launch outward on the first ray and fit the blowup law");

    auto* cmd_classify = app.add_subcommand("classify", "orbit verdict for one launch");
    add_common(cmd_classify, true);

    auto* cmd_sx0 = app.add_subcommand("sweep-x0", "critical curve x0(eps)");
    add_common(cmd_sx0, false);
    cmd_sx0->add_option("--eps-lo", rc.eps_lo);
    cmd_sx0->add_option("--eps-hi", rc.eps_hi);
    cmd_sx0->add_option("--steps", rc.steps);
    cmd_sx0->add_option("--tol", rc.tol);
    cmd_sx0->add_option("--out", rc.out);

    auto* cmd_ss0 = app.add_subcommand("sweep-s0", "terminating curve s0(eps)");
    add_common(cmd_ss0, false);
    cmd_ss0->add_option("--eps-lo", rc.eps_lo);
    cmd_ss0->add_option("--eps-hi", rc.eps_hi);
    cmd_ss0->add_option("--steps", rc.steps);
    cmd_ss0->add_option("--out", rc.out);
    bool find_min = false;
    cmd_ss0->add_flag("--find-min", find_min, "golden-section minimum of s0 over [eps-lo, eps-hi]");

    auto* cmd_gap = app.add_subcommand("gap", "gap substructure table for eps > 2");
    add_common(cmd_gap, false);
    cmd_gap->add_option("--nmax", rc.nmax);
    cmd_gap->add_option("--out", rc.out);

    auto* cmd_plot = app.add_subcommand("plot", "render a trajectory CSV or sweep JSON as SVG");
    std::string plot_in, plot_out, plot_eps = "";
    cmd_plot->add_option("--in", plot_in)->required();
    cmd_plot->add_option("--out", plot_out)->required();
    cmd_plot->add_option("--epsilon", plot_eps, "overlay turning points for this eps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const IntegratorConfig cfg = rc.integrator();

        if (*cmd_traj) {
            const double eps = rc.eps();
            IntegratorConfig c = cfg;
            const Trajectory traj = integrate(make_launch(rc, eps), eps, c);
            if (!rc.out.empty()) write_trajectory_csv(traj, rc.out);
            if (!svg_out.empty()) {
                PlotOptions opt;
                opt.turning_points = visible_turning_points(eps, 2);
                emit_svg_plot(traj, svg_out, opt);
            }
            const Event* term = traj.terminal();
            std::cout << "samples=" << traj.samples.size() << " events=" << traj.events.size()
                      << " terminal=" << (term ? event_kind_name(term->kind) : "none")
                      << " max_energy_defect=" << traj.max_energy_defect << '\n';
        } else if (*cmd_period) {
            const double eps = rc.eps();
            const double ta = analytic_period(eps);
            const PeriodResult pr = numeric_period(
                rc.cartesian ? surface_from_complex(complexd(rc.re, rc.im), std::arg(complexd(rc.re, rc.im)))
                             : SurfacePoint{rc.y0, -M_PI / 2.0},
                eps, cfg);
            if (!pr.closed) {
                std::cerr << "period: orbit did not close within budget\n";
                return 3;
            }
            std::printf("analytic %.12g\nnumeric  %.12g\ndiff     %.3g\n", ta, pr.period,
                        std::abs(ta - pr.period));
        } else if (*cmd_tp) {
            const double eps = rc.eps();
            json j = json::array();
            for (const TurningPoint& tp : visible_turning_points(eps, rc.nmax)) {
                const complexd z = tp.location.to_complex();
                j.push_back({{"pair", tp.pair},
                             {"side", tp.side == Side::Right ? "right" : "left"},
                             {"re", z.real()},
                             {"im", z.imag()},
                             {"theta", tp.location.theta},
                             {"sheet", physical_sheet(tp.location.theta, eps)}});
            }
            if (!rc.out.empty())
                write_text(rc.out, j.dump(2) + "\n");
            else
                std::cout << j.dump(2) << '\n';
        } else if (*cmd_crit) {
            const CriticalPointResult res =
                critical_point(rc.eps(), rc.boundary, rc.y_lo, rc.y_hi, rc.tol, cfg);
            if (res.status != CriticalPointResult::Status::Ok) {
                std::cerr << "critical: "
                          << (res.status == CriticalPointResult::Status::BracketInvalid
                                  ? "bracket endpoints classify identically"
                                  : "predicate not monotone across bracket")
                          << '\n';
                return 3;
            }
            std::printf("x%d = -%.9gi\n", rc.boundary, res.y);
        } else if (*cmd_term) {
            const TerminatingResult res = terminating_start(rc.n, rc.eps(), cfg, rc.delta);
            if (!rc.out.empty()) write_trajectory_csv(res.traj, rc.out);
            if (res.status == TerminatingResult::Status::Ok)
                std::printf("s%d = -%.9gi\n", rc.n, res.s);
            else
                std::printf("s%d = NoTermination\n", rc.n);
        } else if (*cmd_escape) {
            const double eps = rc.eps();
            for (const EscapeRay& ray : escape_angles(eps, ray_lo, ray_hi))
                std::printf("N=%d theta=%.9g sheet=%d\n", ray.tower_index, ray.theta, ray.sheet);
            if (do_fit) {
                const EscapeRay ray = escape_angles(eps, ray_hi, ray_hi).front();
                const Trajectory traj =
                    integrate(launch_on_shell(SurfacePoint{5.0, ray.theta}, +1, eps), eps, cfg);
                const EscapeFit fit = fit_escape(traj, eps);
                if (fit.status != EscapeFit::Status::Ok) {
                    std::cerr << "escape: insufficient escape tail for fit\n";
                    return 3;
                }
                std::printf("exponent=%.6g expected=%.6g t_star=%.9g residual=%.3g\n",
                            fit.fitted_exponent, -2.0 / eps, fit.t_star, fit.residual);
            }
        } else if (*cmd_classify) {
            const double eps = rc.eps();
            const OrbitClassification oc = classify(make_launch(rc, eps), eps, cfg);
            json j;
            j["verdict"] = verdict_name(oc.verdict);
            j["pt_symmetric"] = oc.pt_symmetric;
            if (oc.verdict == OrbitClassification::Verdict::Closed) {
                j["period"] = oc.period;
                j["sheets_visited"] = oc.sheets_visited;
                json enc = json::array();
                for (const auto& [pair, side] : oc.enclosed)
                    enc.push_back({{"pair", pair}, {"side", side == Side::Right ? "right" : "left"}});
                j["enclosed"] = enc;
            } else if (oc.verdict == OrbitClassification::Verdict::Terminating) {
                j["pair_index"] = oc.pair_index;
                j["s_value"] = oc.s_value;
            } else if (oc.verdict == OrbitClassification::Verdict::Escaping) {
                j["asymptotic_angle"] = oc.asymptotic_angle;
                j["blowup_time"] = oc.blowup_time;
            } else {
                j["reason"] = oc.reason;
            }
            std::cout << j.dump(2) << '\n';
        } else if (*cmd_sx0) {
            const SweepResult sweep =
                sweep_x0(epsilon_grid(rc.eps_lo, rc.eps_hi, rc.steps), cfg, rc.tol);
            const json j = sweep_to_json(sweep, "x0");
            if (!rc.out.empty())
                write_text(rc.out, j.dump(2) + "\n");
            else
                std::cout << j.dump(2) << '\n';
        } else if (*cmd_ss0) {
            if (find_min) {
                const MinimumResult mr = find_s0_minimum(rc.eps_lo, rc.eps_hi, cfg);
                if (!mr.ok) {
                    std::cerr << "sweep-s0: minimum bracket invalid\n";
                    return 3;
                }
                std::printf("eps*=%.6g s0*=-%.6gi\n", mr.eps_star, mr.value_y_star);
            } else {
                const SweepResult sweep = sweep_s0(epsilon_grid(rc.eps_lo, rc.eps_hi, rc.steps), cfg);
                const json j = sweep_to_json(sweep, "s0");
                if (!rc.out.empty())
                    write_text(rc.out, j.dump(2) + "\n");
                else
                    std::cout << j.dump(2) << '\n';
            }
        } else if (*cmd_gap) {
            const GapTable table = gap_table(rc.eps(), rc.nmax, cfg);
            json j;
            j["epsilon"] = table.epsilon;
            j["rows"] = json::array();
            for (const GapRow& row : table.rows) {
                if (row.terminates)
                    j["rows"].push_back({{"n", row.n}, {"s", row.s}});
                else
                    j["rows"].push_back({{"n", row.n}, {"s", nullptr}});
            }
            if (table.edge_found) j["r0_upper_edge"] = table.r0_upper_edge;
            j["gap_order_bottom_up"] = table.gap_order_bottom_up;
            if (!rc.out.empty())
                write_text(rc.out, j.dump(2) + "\n");
            else
                std::cout << j.dump(2) << '\n';
        } else if (*cmd_plot) {
            if (plot_in.size() > 5 && plot_in.substr(plot_in.size() - 5) == ".json") {
                std::ifstream f(plot_in);
                if (!f) throw std::runtime_error("cannot open " + plot_in);
                json j;
                f >> j;
                PlotOptions opt;
                opt.title = j.value("kind", std::string(""));
                emit_svg_plot(sweep_from_json(j), plot_out, opt);
            } else {
                const Trajectory traj = read_trajectory_csv(plot_in);
                PlotOptions opt;
                if (!plot_eps.empty())
                    opt.turning_points = visible_turning_points(parse_epsilon(plot_eps), 2);
                emit_svg_plot(traj, plot_out, opt);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
