#pragma once

#include "lienard/integrate.hpp"
#include "lienard/model.hpp"

#include <string>

namespace lienard {

struct PlotOptions {
    int width = 800;
    int height = 600;
    int axis_h = 0;          ///< flat-state index on the horizontal axis
    int axis_v = 1;          ///< flat-state index on the vertical axis
    int contour_levels = 5;  ///< V contour count (drawn for n = 2 systems)
    int contour_grid = 101;  ///< marching-squares grid points per axis
    int max_points = 4000;   ///< polyline decimation cap
};

/// Standalone SVG phase portrait: the trajectory projected onto the chosen
/// coordinate pair with start/end markers, the origin cross, ticks, and — on
/// n = 2 systems — V level curves over the plotted plane (the other two
/// coordinates held at 0) with their values in the legend. Layout and number
/// formatting are fixed, so identical inputs give identical bytes.
[[nodiscard]] std::string phase_portrait_svg(const Trajectory& traj, const LienardSystem& sys,
                                             const PlotOptions& opts = {});

void write_svg(const Trajectory& traj, const LienardSystem& sys, const std::string& path,
               const PlotOptions& opts = {});

}  // namespace lienard
