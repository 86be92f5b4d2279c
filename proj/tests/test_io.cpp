#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "riemannflow/io.hpp"

using namespace rflow;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const char* name) : path(fs::temp_directory_path() / name) {}
    ~TempFile() { std::remove(path.string().c_str()); }
};

Trajectory sample_orbit(double eps, double y0) {
    const IntegratorConfig cfg;
    return integrate(launch_on_shell(SurfacePoint{y0, -M_PI / 2.0}, +1, eps), eps, cfg);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("csv header is the stable schema") {
    const Trajectory traj = sample_orbit(0.0, 1.0);
    TempFile tf("rf_test_header.csv");
    write_trajectory_csv(traj, tf.path.string());
    std::ifstream f(tf.path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "t,re_x,im_x,r,theta,sheet,re_p,im_p,energy_err");
}

TEST_CASE("csv round trip restores samples and events") {
    const double eps = 1.0 / M_PI;
    const Trajectory traj = sample_orbit(eps, 0.68);
    REQUIRE(traj.closed());
    TempFile tf("rf_test_roundtrip.csv");
    write_trajectory_csv(traj, tf.path.string());
    const Trajectory back = read_trajectory_csv(tf.path.string(), eps);
    REQUIRE(back.samples.size() == traj.samples.size());
    for (size_t i = 0; i < traj.samples.size(); i += 7) {
        CHECK(back.samples[i].time == doctest::Approx(traj.samples[i].time).epsilon(1e-11));
        CHECK(std::abs(back.samples[i].x() - traj.samples[i].x()) < 1e-9);
        CHECK(std::abs(back.samples[i].p() - traj.samples[i].p()) < 1e-9);
        CHECK(back.samples[i].position.theta ==
              doctest::Approx(traj.samples[i].position.theta).epsilon(1e-11));
    }
    REQUIRE(back.events.size() == traj.events.size());
    for (size_t i = 0; i < traj.events.size(); ++i) {
        CHECK(back.events[i].kind == traj.events[i].kind);
        CHECK(back.events[i].time == doctest::Approx(traj.events[i].time).epsilon(1e-11));
    }
    CHECK(back.closed());
}

TEST_CASE("sheet column spans the visited sheets") {
    const double eps = 1.0 / M_PI;
    const Trajectory traj = sample_orbit(eps, 0.68);
    TempFile tf("rf_test_sheets.csv");
    write_trajectory_csv(traj, tf.path.string());
    std::ifstream f(tf.path);
    std::string line;
    std::getline(f, line);  // header
    std::set<int> sheets;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        // sheet is the 6th column
        size_t pos = 0;
        for (int c = 0; c < 5; ++c) pos = line.find(',', pos) + 1;
        sheets.insert(std::stoi(line.substr(pos)));
    }
    CHECK(sheets == std::set<int>{-1, 0, 1});
}

TEST_CASE("harmonic csv stays on sheet 0") {
    const Trajectory traj = sample_orbit(0.0, 1.5);
    TempFile tf("rf_test_harmonic.csv");
    write_trajectory_csv(traj, tf.path.string());
    std::ifstream f(tf.path);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t pos = 0;
        for (int c = 0; c < 5; ++c) pos = line.find(',', pos) + 1;
        CHECK(line.substr(pos, line.find(',', pos) - pos) == "0");
    }
}

TEST_CASE("epsilon parsing accepts decimals and the two benchmark tokens") {
    CHECK(parse_epsilon("0.25") == doctest::Approx(0.25));
    CHECK(parse_epsilon("1/pi") == doctest::Approx(1.0 / M_PI));
    CHECK(parse_epsilon("1+sqrt2") == doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK_THROWS_AS(parse_epsilon("two"), std::invalid_argument);
    CHECK_THROWS_AS(parse_epsilon("1.5x"), std::invalid_argument);
}

TEST_CASE("trajectory svg renders sheet-colored polylines and markers") {
    const double eps = 1.0 / M_PI;
    const Trajectory traj = sample_orbit(eps, 0.68);
    TempFile tf("rf_test_plot.svg");
    PlotOptions opt;
    opt.title = "orbit";
    opt.turning_points = {turning_point(0, Side::Right, eps), turning_point(0, Side::Left, eps)};
    emit_svg_plot(traj, tf.path.string(), opt);
    const std::string svg = slurp(tf.path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);   // turning-point dots
    CHECK(svg.find("orbit") != std::string::npos);
    // three sheets -> at least three polylines
    size_t count = 0;
    for (size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
        ++count;
    CHECK(count >= 3);
}

TEST_CASE("sweep svg renders a single curve") {
    SweepResult sweep;
    for (int i = 0; i < 5; ++i)
        sweep.samples.push_back(CriticalCurveSample{0.2 * (i + 1), 1.0 + 0.1 * i, "x0", 1e-6});
    TempFile tf("rf_test_sweep.svg");
    emit_svg_plot(sweep, tf.path.string(), PlotOptions{});
    const std::string svg = slurp(tf.path);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
}
