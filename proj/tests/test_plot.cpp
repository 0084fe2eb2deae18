#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/errors.hpp"
#include "lienard/integrate.hpp"
#include "lienard/model.hpp"
#include "lienard/plot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace lienard;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++count;
    return count;
}

PlotOptions phase_axes() {
    PlotOptions opts;
    opts.axis_h = 0;  // x1
    opts.axis_v = 2;  // y1
    return opts;
}

}  // namespace

TEST_CASE("the portrait is a well-formed, deterministic SVG") {
    const auto sys = builtin("squares");
    const auto traj = integrate(sys, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 5.0);

    const std::string svg = phase_portrait_svg(traj, sys, phase_axes());
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(phase_portrait_svg(traj, sys, phase_axes()) == svg);
}

TEST_CASE("markers, origin cross, and axis labels are drawn") {
    const auto sys = builtin("oscillator");
    IntegrateOptions iopts;
    iopts.convergence_radius = 0.0;
    const auto traj = integrate(sys, State{{1.0, 0.0}, {0.0, 0.0}}, 0.0, 6.283185307179586,
                                iopts);

    const std::string svg = phase_portrait_svg(traj, sys, phase_axes());
    CHECK(svg.find("fill=\"#2ca02c\"") != std::string::npos);  // start
    CHECK(svg.find("fill=\"#d62728\"") != std::string::npos);  // end
    CHECK(svg.find("stroke=\"#444444\"") != std::string::npos);  // origin cross
    CHECK(svg.find(">x1<") != std::string::npos);
    CHECK(svg.find(">y1<") != std::string::npos);
    CHECK(svg.find(">start<") != std::string::npos);
    CHECK(svg.find(">end<") != std::string::npos);
}

TEST_CASE("n = 2 portraits carry V contours with legend values") {
    const auto sys = builtin("squares");
    const auto traj = integrate(sys, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 5.0);

    PlotOptions opts = phase_axes();
    opts.contour_grid = 41;  // keep the test quick
    const std::string svg = phase_portrait_svg(traj, sys, opts);
    CHECK(count_of(svg, "stroke=\"#c0c0c0\"") == 5);
    CHECK(count_of(svg, ">V = ") == 5);

    opts.contour_levels = 0;
    const std::string bare = phase_portrait_svg(traj, sys, opts);
    CHECK(count_of(bare, ">V = ") == 0);
}

TEST_CASE("the polyline respects the decimation cap and keeps the endpoint") {
    const auto sys = builtin("squares");
    const auto traj = integrate(sys, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 50.0);
    REQUIRE(traj.t.size() > 200);

    PlotOptions opts = phase_axes();
    opts.max_points = 50;
    const std::string svg = phase_portrait_svg(traj, sys, opts);

    const std::size_t open = svg.find("points=\"");
    REQUIRE(open != std::string::npos);
    const std::size_t close = svg.find('"', open + 8);
    const std::string points = svg.substr(open + 8, close - open - 8);
    const std::size_t pairs = count_of(points, ",");
    CHECK(pairs <= 51);  // cap plus the kept final point
    CHECK(pairs >= 25);

    // The final sample survives decimation: its rendered pair is present.
    const std::string full = phase_portrait_svg(traj, sys, phase_axes());
    const std::size_t fopen = full.find("points=\"");
    const std::size_t fclose = full.find('"', fopen + 8);
    const std::string full_points = full.substr(fopen + 8, fclose - fopen - 8);
    const std::size_t tail = full_points.find_last_of(' ', full_points.size() - 2);
    const std::string last_pair = full_points.substr(tail + 1);
    CHECK(points.find(last_pair) != std::string::npos);
}

TEST_CASE("a single-stamp trajectory renders markers without a path") {
    Trajectory traj;
    traj.n = 2;
    traj.system_name = "squares";
    traj.t = {0.0};
    traj.z = {{0.5, 0.25, 0.0, 0.0}};
    traj.V = {0.0};
    traj.Vdot = {0.0};

    const auto sys = builtin("squares");
    const std::string svg = phase_portrait_svg(traj, sys, phase_axes());
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("fill=\"#2ca02c\"") != std::string::npos);
    CHECK(svg.find("fill=\"#d62728\"") != std::string::npos);
}

TEST_CASE("bad axes and empty trajectories are rejected") {
    const auto sys = builtin("squares");
    const auto traj = integrate(sys, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 1.0);

    PlotOptions opts;
    opts.axis_h = opts.axis_v = 0;
    CHECK_THROWS_AS(static_cast<void>(phase_portrait_svg(traj, sys, opts)), ConfigError);
    opts = PlotOptions{};
    opts.axis_v = 4;
    CHECK_THROWS_AS(static_cast<void>(phase_portrait_svg(traj, sys, opts)), ConfigError);
    opts = PlotOptions{};
    opts.max_points = 1;
    CHECK_THROWS_AS(static_cast<void>(phase_portrait_svg(traj, sys, opts)), ConfigError);

    Trajectory empty;
    empty.n = 2;
    CHECK_THROWS_AS(static_cast<void>(phase_portrait_svg(empty, sys, PlotOptions{})), ConfigError);
}

TEST_CASE("write_svg puts the same bytes on disk") {
    const auto sys = builtin("squares");
    const auto traj = integrate(sys, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 2.0);

    const std::string path = "plot_roundtrip.svg";
    write_svg(traj, sys, path, phase_axes());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == phase_portrait_svg(traj, sys, phase_axes()));
    std::remove(path.c_str());
}
