#include "lienard/plot.hpp"

#include "lienard/errors.hpp"
#include "lienard/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace lienard {

namespace {

std::string num(double v, const char* spec = "%.2f") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string axis_name(int flat, int n) {
    return flat < n ? "x" + std::to_string(flat + 1) : "y" + std::to_string(flat - n + 1);
}

struct Frame {
    double lo_h, hi_h, lo_v, hi_v;
    double x0, y0, w, h;  // pixel box of the data area

    [[nodiscard]] double px(double u) const { return x0 + (u - lo_h) / (hi_h - lo_h) * w; }
    [[nodiscard]] double py(double v) const { return y0 + h - (v - lo_v) / (hi_v - lo_v) * h; }
};

void pad_range(double& lo, double& hi) {
    lo = std::min(lo, 0.0);  // keep the origin in view: it is the subject
    hi = std::max(hi, 0.0);
    double span = hi - lo;
    if (span <= 0.0) span = 1.0;
    lo -= 0.1 * span;
    hi += 0.1 * span;
}

/// Segments of the level curve {field = level} on a uniform grid, appended
/// to an SVG path. Corner order per cell: (i,j), (i+1,j), (i+1,j+1), (i,j+1)
/// with i along the horizontal axis. Ambiguous saddle cases split by the
/// cell-center average, so the output is a pure function of the field.
std::string contour_path(const std::vector<double>& field, int grid, const Frame& fr,
                         double level) {
    auto at = [&](int i, int j) { return field[static_cast<std::size_t>(j) * grid + i]; };
    auto hu = [&](int i) { return fr.lo_h + (fr.hi_h - fr.lo_h) * i / (grid - 1); };
    auto vu = [&](int j) { return fr.lo_v + (fr.hi_v - fr.lo_v) * j / (grid - 1); };
    std::string d;

    for (int j = 0; j + 1 < grid; ++j) {
        for (int i = 0; i + 1 < grid; ++i) {
            const double c0 = at(i, j), c1 = at(i + 1, j), c2 = at(i + 1, j + 1),
                         c3 = at(i, j + 1);
            const int mask = (c0 >= level ? 1 : 0) | (c1 >= level ? 2 : 0) |
                             (c2 >= level ? 4 : 0) | (c3 >= level ? 8 : 0);
            if (mask == 0 || mask == 15) continue;

            // Interpolated crossing on each cell edge (bottom, right, top, left).
            auto cross = [&](double a, double b, double ua, double ub, bool horizontal,
                             double fixed) {
                const double t = (level - a) / (b - a);
                const double u = ua + t * (ub - ua);
                return horizontal ? std::pair{u, fixed} : std::pair{fixed, u};
            };
            const auto eb = cross(c0, c1, hu(i), hu(i + 1), true, vu(j));
            const auto er = cross(c1, c2, vu(j), vu(j + 1), false, hu(i + 1));
            const auto et = cross(c3, c2, hu(i), hu(i + 1), true, vu(j + 1));
            const auto el = cross(c0, c3, vu(j), vu(j + 1), false, hu(i));

            auto seg = [&](std::pair<double, double> a, std::pair<double, double> b) {
                d += "M" + num(fr.px(a.first)) + " " + num(fr.py(a.second)) + "L" +
                     num(fr.px(b.first)) + " " + num(fr.py(b.second));
            };
            switch (mask) {
                case 1: case 14: seg(el, eb); break;
                case 2: case 13: seg(eb, er); break;
                case 3: case 12: seg(el, er); break;
                case 4: case 11: seg(er, et); break;
                case 6: case 9:  seg(eb, et); break;
                case 7: case 8:  seg(et, el); break;
                case 5: case 10: {
                    const double center = 0.25 * (c0 + c1 + c2 + c3);
                    const bool joined = (center >= level) == (mask == 5);
                    if (joined) { seg(el, eb); seg(er, et); }
                    else        { seg(el, et); seg(eb, er); }
                    break;
                }
                default: break;
            }
        }
    }
    return d;
}

}  // namespace

std::string phase_portrait_svg(const Trajectory& traj, const LienardSystem& sys,
                               const PlotOptions& opts) {
    const int n = sys.n;
    const int flat_size = 2 * n;
    if (opts.axis_h < 0 || opts.axis_h >= flat_size || opts.axis_v < 0 ||
        opts.axis_v >= flat_size || opts.axis_h == opts.axis_v)
        throw ConfigError("plot: axis indices must be distinct and within the state");
    if (traj.z.empty()) throw ConfigError("plot: empty trajectory");
    if (opts.max_points < 2) throw ConfigError("plot: max_points must be at least 2");

    // Data ranges over the projected trajectory, origin included, 10% pad.
    double lo_h = traj.z.front()[static_cast<std::size_t>(opts.axis_h)];
    double hi_h = lo_h, lo_v = traj.z.front()[static_cast<std::size_t>(opts.axis_v)],
           hi_v = lo_v;
    for (const auto& z : traj.z) {
        lo_h = std::min(lo_h, z[static_cast<std::size_t>(opts.axis_h)]);
        hi_h = std::max(hi_h, z[static_cast<std::size_t>(opts.axis_h)]);
        lo_v = std::min(lo_v, z[static_cast<std::size_t>(opts.axis_v)]);
        hi_v = std::max(hi_v, z[static_cast<std::size_t>(opts.axis_v)]);
    }
    pad_range(lo_h, hi_h);
    pad_range(lo_v, hi_v);

    const Frame fr{lo_h, hi_h, lo_v, hi_v, 55.0, 20.0,
                   static_cast<double>(opts.width) - 75.0,
                   static_cast<double>(opts.height) - 65.0};

    const std::string name_h = axis_name(opts.axis_h, n);
    const std::string name_v = axis_name(opts.axis_v, n);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) +
           "\" height=\"" + std::to_string(opts.height) + "\" viewBox=\"0 0 " +
           std::to_string(opts.width) + " " + std::to_string(opts.height) + "\">\n";
    svg += "<title>" + sys.name + ": " + name_v + " against " + name_h + "</title>\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Frame, ticks, labels.
    svg += "<rect x=\"" + num(fr.x0) + "\" y=\"" + num(fr.y0) + "\" width=\"" + num(fr.w) +
           "\" height=\"" + num(fr.h) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double uh = lo_h + (hi_h - lo_h) * k / 4.0;
        const double uv = lo_v + (hi_v - lo_v) * k / 4.0;
        const double px = fr.px(uh), py = fr.py(uv);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(fr.y0 + fr.h) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(fr.y0 + fr.h + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(fr.y0 + fr.h + 18) +
               "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\" "
               "fill=\"#333333\">" + num(uh, "%.3g") + "</text>\n";
        svg += "<line x1=\"" + num(fr.x0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(fr.x0) +
               "\" y2=\"" + num(py) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(fr.x0 - 8) + "\" y=\"" + num(py + 4) +
               "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" "
               "fill=\"#333333\">" + num(uv, "%.3g") + "</text>\n";
    }
    svg += "<text x=\"" + num(fr.x0 + fr.w / 2) + "\" y=\"" +
           num(static_cast<double>(opts.height) - 8) +
           "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" "
           "fill=\"#333333\">" + name_h + "</text>\n";
    svg += "<text x=\"14\" y=\"" + num(fr.y0 + fr.h / 2) +
           "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 14 " + num(fr.y0 + fr.h / 2) + ")\" fill=\"#333333\">" +
           name_v + "</text>\n";

    // V level curves on the plotted plane (remaining coordinates at 0).
    std::vector<double> levels;
    if (n == 2 && opts.contour_levels > 0 && opts.contour_grid >= 8) {
        const LyapunovData ld(sys);
        const int grid = opts.contour_grid;
        std::vector<double> field(static_cast<std::size_t>(grid) * grid);
        std::vector<double> flat(static_cast<std::size_t>(flat_size), 0.0);
        double vmin = 0.0, vmax = 0.0;
        for (int j = 0; j < grid; ++j) {
            for (int i = 0; i < grid; ++i) {
                flat[static_cast<std::size_t>(opts.axis_h)] =
                    lo_h + (hi_h - lo_h) * i / (grid - 1);
                flat[static_cast<std::size_t>(opts.axis_v)] =
                    lo_v + (hi_v - lo_v) * j / (grid - 1);
                const double v = ld.V_flat(flat.data());
                field[static_cast<std::size_t>(j) * grid + i] = v;
                if (i == 0 && j == 0) vmin = vmax = v;
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
        if (vmax > vmin) {
            for (int l = 1; l <= opts.contour_levels; ++l) {
                const double level = vmin + (vmax - vmin) * l / (opts.contour_levels + 1);
                const std::string d = contour_path(field, grid, fr, level);
                if (d.empty()) continue;
                levels.push_back(level);
                svg += "<path d=\"" + d +
                       "\" fill=\"none\" stroke=\"#c0c0c0\" stroke-width=\"0.8\"/>\n";
            }
        }
    }

    // The projected trajectory, decimated to the point cap.
    {
        const std::size_t count = traj.z.size();
        const std::size_t stride =
            std::max<std::size_t>(1, (count + static_cast<std::size_t>(opts.max_points) - 1) /
                                         static_cast<std::size_t>(opts.max_points));
        std::string pts;
        for (std::size_t k = 0; k < count; k += stride) {
            pts += num(fr.px(traj.z[k][static_cast<std::size_t>(opts.axis_h)])) + "," +
                   num(fr.py(traj.z[k][static_cast<std::size_t>(opts.axis_v)])) + " ";
        }
        if ((count - 1) % stride != 0)
            pts += num(fr.px(traj.z.back()[static_cast<std::size_t>(opts.axis_h)])) + "," +
                   num(fr.py(traj.z.back()[static_cast<std::size_t>(opts.axis_v)])) + " ";
        svg += "<polyline points=\"" + pts +
               "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    }

    // Origin cross, start and end markers.
    {
        const double ox = fr.px(0.0), oy = fr.py(0.0);
        svg += "<path d=\"M" + num(ox - 6) + " " + num(oy) + "L" + num(ox + 6) + " " + num(oy) +
               "M" + num(ox) + " " + num(oy - 6) + "L" + num(ox) + " " + num(oy + 6) +
               "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg += "<circle cx=\"" + num(fr.px(traj.z.front()[static_cast<std::size_t>(opts.axis_h)])) +
               "\" cy=\"" + num(fr.py(traj.z.front()[static_cast<std::size_t>(opts.axis_v)])) +
               "\" r=\"4\" fill=\"#2ca02c\"/>\n";
        svg += "<circle cx=\"" + num(fr.px(traj.z.back()[static_cast<std::size_t>(opts.axis_h)])) +
               "\" cy=\"" + num(fr.py(traj.z.back()[static_cast<std::size_t>(opts.axis_v)])) +
               "\" r=\"4\" fill=\"#d62728\"/>\n";
    }

    // Legend: markers and, when drawn, the V contour values.
    {
        double ty = fr.y0 + 16.0;
        const double tx = fr.x0 + fr.w - 8.0;
        auto line = [&](const std::string& text, const char* color) {
            svg += "<text x=\"" + num(tx) + "\" y=\"" + num(ty) +
                   "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" fill=\"" +
                   color + "\">" + text + "</text>\n";
            ty += 14.0;
        };
        line("start", "#2ca02c");
        line("end", "#d62728");
        for (const double level : levels) line("V = " + num(level, "%.4g"), "#909090");
    }

    svg += "</svg>\n";
    return svg;
}

void write_svg(const Trajectory& traj, const LienardSystem& sys, const std::string& path,
               const PlotOptions& opts) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << phase_portrait_svg(traj, sys, opts);
}

}  // namespace lienard
