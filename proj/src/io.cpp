#include "riemannflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rflow {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void io_fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f(path);
    if (!f) io_fail("write_trajectory_csv: cannot open", path);
    f << "t,re_x,im_x,r,theta,sheet,re_p,im_p,energy_err\n";
    for (const PhaseState& s : traj.samples) {
        const complexd x = s.x(), p = s.p();
        f << num(s.time) << ',' << num(x.real()) << ',' << num(x.imag()) << ','
          << num(s.position.r) << ',' << num(s.position.theta) << ','
          << physical_sheet(s.position.theta, traj.epsilon) << ',' << num(p.real()) << ','
          << num(p.imag()) << ','
          << num(energy_defect(s, traj.epsilon)) << '\n';
    }
    for (const Event& e : traj.events) {
        f << "# event," << event_kind_name(e.kind) << ',' << num(e.time);
        switch (e.kind) {
            case EventKind::BranchCutCrossing:
                f << ',' << (e.direction > 0 ? "up" : "down") << ',' << e.sheet_from << ','
                  << e.sheet_to;
                break;
            case EventKind::NegativeImagAxisCrossing:
                f << ',' << e.sheet << ',' << num(e.axis_y);
                break;
            case EventKind::Closure:
                f << ',' << num(e.period);
                break;
            case EventKind::TurningTermination:
                f << ',' << e.nearest_pair;
                break;
            case EventKind::Escape:
                f << ',' << num(e.escape_angle);
                break;
            case EventKind::EnergyFault:
                break;
        }
        f << '\n';
    }
    if (!f) io_fail("write_trajectory_csv: write error", path);
}

Trajectory read_trajectory_csv(const std::string& path, double eps_hint) {
    std::ifstream f(path);
    if (!f) io_fail("read_trajectory_csv: cannot open", path);
    Trajectory traj;
    traj.epsilon = eps_hint;
    std::string line;
    bool header = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto fields = split(line, ',');
            if (fields.size() < 3 || fields[0] != "# event") continue;
            Event e{};
            const std::string& kind = fields[1];
            e.time = std::stod(fields[2]);
            if (kind == "branch_cut_crossing" && fields.size() >= 6) {
                e.kind = EventKind::BranchCutCrossing;
                e.direction = (fields[3] == "up") ? +1 : -1;
                e.sheet_from = std::stoi(fields[4]);
                e.sheet_to = std::stoi(fields[5]);
            } else if (kind == "neg_imag_axis_crossing" && fields.size() >= 5) {
                e.kind = EventKind::NegativeImagAxisCrossing;
                e.sheet = std::stoi(fields[3]);
                e.axis_y = std::stod(fields[4]);
            } else if (kind == "closure" && fields.size() >= 4) {
                e.kind = EventKind::Closure;
                e.period = std::stod(fields[3]);
            } else if (kind == "turning_termination" && fields.size() >= 4) {
                e.kind = EventKind::TurningTermination;
                e.nearest_pair = std::stoi(fields[3]);
            } else if (kind == "escape" && fields.size() >= 4) {
                e.kind = EventKind::Escape;
                e.escape_angle = std::stod(fields[3]);
            } else if (kind == "energy_fault") {
                e.kind = EventKind::EnergyFault;
            } else {
                continue;
            }
            traj.events.push_back(e);
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 9) io_fail("read_trajectory_csv: malformed row", path);
        PhaseState s;
        s.time = std::stod(fields[0]);
        s.position = SurfacePoint{std::stod(fields[3]), std::stod(fields[4])};
        s.momentum = momentum_from_complex(complexd(std::stod(fields[6]), std::stod(fields[7])));
        traj.samples.push_back(s);
    }
    if (!traj.samples.empty()) traj.launch = traj.samples.front();
    return traj;
}

namespace {

// Fixed 7-color cycle for sheets -3..+3, matching the trajectory figures'
// scheme (purple on sheet 0, red on +1, blue on -1).
const char* sheet_color(int sheet) {
    static const char* palette[7] = {
        "#8b5a2b",  // -3 brown
        "#3cb8a0",  // -2 mint green
        "#1f4fd8",  // -1 blue
        "#7d2fbd",  //  0 purple
        "#d62728",  // +1 red
        "#32cd32",  // +2 lime green
        "#e8850c",  // +3 orange
    };
    return palette[((sheet + 3) % 7 + 7) % 7];
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    double width, height;
    double margin = 48.0;

    double px(double x) const {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    }
    double py(double y) const {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    }
};

double nice_tick(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

void svg_axes(std::ofstream& f, const Frame& fr) {
    f << "<rect x='" << fr.margin << "' y='" << fr.margin << "' width='"
      << fr.width - 2 * fr.margin << "' height='" << fr.height - 2 * fr.margin
      << "' fill='white' stroke='#444'/>\n";
    const double tx = nice_tick(fr.x_hi - fr.x_lo);
    for (double x = std::ceil(fr.x_lo / tx) * tx; x <= fr.x_hi + 1e-12; x += tx) {
        f << "<line x1='" << fr.px(x) << "' y1='" << fr.py(fr.y_lo) << "' x2='" << fr.px(x)
          << "' y2='" << fr.py(fr.y_lo) + 5 << "' stroke='#444'/>\n";
        f << "<text x='" << fr.px(x) << "' y='" << fr.py(fr.y_lo) + 18
          << "' font-size='11' text-anchor='middle'>" << num(x) << "</text>\n";
    }
    const double ty = nice_tick(fr.y_hi - fr.y_lo);
    for (double y = std::ceil(fr.y_lo / ty) * ty; y <= fr.y_hi + 1e-12; y += ty) {
        f << "<line x1='" << fr.px(fr.x_lo) - 5 << "' y1='" << fr.py(y) << "' x2='"
          << fr.px(fr.x_lo) << "' y2='" << fr.py(y) << "' stroke='#444'/>\n";
        f << "<text x='" << fr.px(fr.x_lo) - 8 << "' y='" << fr.py(y) + 4
          << "' font-size='11' text-anchor='end'>" << num(y) << "</text>\n";
    }
}

std::ofstream svg_open(const std::string& path, const PlotOptions& opt) {
    std::ofstream f(path);
    if (!f) io_fail("emit_svg_plot: cannot open", path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << opt.width << "' height='"
      << opt.height << "' viewBox='0 0 " << opt.width << ' ' << opt.height << "'>\n";
    if (!opt.title.empty())
        f << "<text x='" << opt.width / 2
          << "' y='24' font-size='15' text-anchor='middle'>" << opt.title << "</text>\n";
    return f;
}

}  // namespace

void emit_svg_plot(const Trajectory& traj, const std::string& path, const PlotOptions& opt) {
    double x_lo = -1, x_hi = 1, y_lo = -1, y_hi = 1;
    bool first = true;
    auto grow = [&](complexd z) {
        if (first) {
            x_lo = x_hi = z.real();
            y_lo = y_hi = z.imag();
            first = false;
        }
        x_lo = std::min(x_lo, z.real());
        x_hi = std::max(x_hi, z.real());
        y_lo = std::min(y_lo, z.imag());
        y_hi = std::max(y_hi, z.imag());
    };
    for (const PhaseState& s : traj.samples) grow(s.x());
    for (const TurningPoint& tp : opt.turning_points) grow(tp.location.to_complex());
    grow(complexd(0, 0));
    const double pad = 0.08 * std::max(x_hi - x_lo, y_hi - y_lo) + 1e-6;
    Frame fr{x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad, opt.width, opt.height};

    std::ofstream f = svg_open(path, opt);
    svg_axes(f, fr);

    if (opt.draw_branch_cut && fr.y_hi > 0)
        f << "<line x1='" << fr.px(0) << "' y1='" << fr.py(std::max(0.0, fr.y_lo)) << "' x2='"
          << fr.px(0) << "' y2='" << fr.py(fr.y_hi) << "' stroke='black' stroke-width='2.5'/>\n";

    // One polyline per run of constant sheet index.
    size_t i = 0;
    while (i < traj.samples.size()) {
        const int sheet = physical_sheet(traj.samples[i].position.theta, traj.epsilon);
        size_t j = i;
        f << "<polyline fill='none' stroke='" << sheet_color(sheet) << "' stroke-width='1.4' points='";
        while (j < traj.samples.size() &&
               physical_sheet(traj.samples[j].position.theta, traj.epsilon) == sheet) {
            const complexd x = traj.samples[j].x();
            f << fr.px(x.real()) << ',' << fr.py(x.imag()) << ' ';
            ++j;
        }
        if (j < traj.samples.size()) {  // connect across the sheet change
            const complexd x = traj.samples[j].x();
            f << fr.px(x.real()) << ',' << fr.py(x.imag()) << ' ';
        }
        f << "'/>\n";
        i = j;
    }

    for (const TurningPoint& tp : opt.turning_points) {
        const complexd z = tp.location.to_complex();
        f << "<circle cx='" << fr.px(z.real()) << "' cy='" << fr.py(z.imag())
          << "' r='3.2' fill='black'/>\n";
    }
    f << "</svg>\n";
    if (!f) io_fail("emit_svg_plot: write error", path);
}

void emit_svg_plot(const SweepResult& sweep, const std::string& path, const PlotOptions& opt) {
    if (sweep.samples.empty()) io_fail("emit_svg_plot: empty sweep", path);
    double x_lo = sweep.samples.front().epsilon, x_hi = x_lo;
    double y_lo = sweep.samples.front().value_y, y_hi = y_lo;
    for (const CriticalCurveSample& s : sweep.samples) {
        x_lo = std::min(x_lo, s.epsilon);
        x_hi = std::max(x_hi, s.epsilon);
        y_lo = std::min(y_lo, s.value_y);
        y_hi = std::max(y_hi, s.value_y);
    }
    const double padx = 0.05 * (x_hi - x_lo) + 1e-9, pady = 0.05 * (y_hi - y_lo) + 1e-9;
    Frame fr{x_lo - padx, x_hi + padx, y_lo - pady, y_hi + pady, opt.width, opt.height};

    std::ofstream f = svg_open(path, opt);
    svg_axes(f, fr);
    f << "<polyline fill='none' stroke='#1f4fd8' stroke-width='1.6' points='";
    for (const CriticalCurveSample& s : sweep.samples)
        f << fr.px(s.epsilon) << ',' << fr.py(s.value_y) << ' ';
    f << "'/>\n";
    for (const CriticalCurveSample& s : sweep.samples)
        f << "<circle cx='" << fr.px(s.epsilon) << "' cy='" << fr.py(s.value_y)
          << "' r='2.0' fill='#1f4fd8'/>\n";
    f << "</svg>\n";
    if (!f) io_fail("emit_svg_plot: write error", path);
}

double parse_epsilon(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t == "1/pi") return 1.0 / M_PI;
    if (t == "1+sqrt2") return 1.0 + std::sqrt(2.0);
    size_t used = 0;
    double v;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_epsilon: not a number: " + text);
    }
    if (used != t.size()) throw std::invalid_argument("parse_epsilon: trailing junk: " + text);
    return v;
}

}  // namespace rflow
