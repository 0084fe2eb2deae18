#include "lienard/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>

namespace lienard {

namespace {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (for G_i when g_i is not polynomial)
// ---------------------------------------------------------------------------

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
    if (depth > 40) throw Error("quadrature failure: adaptive Simpson did not converge");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0);
}

// ---------------------------------------------------------------------------
// Dense nd-grid helpers: axes × density grid points, flat row-major indexing
// ---------------------------------------------------------------------------

struct GridSpec {
    std::vector<Interval> box;
    int density = 0;

    [[nodiscard]] std::size_t axes() const { return box.size(); }
    [[nodiscard]] long total() const {
        long p = 1;
        for (std::size_t a = 0; a < axes(); ++a) p *= density;
        return p;
    }
    [[nodiscard]] double spacing(std::size_t axis) const {
        return (box[axis].hi - box[axis].lo) / static_cast<double>(density - 1);
    }
    void coords(long flat, std::vector<double>& out) const {
        out.resize(axes());
        for (std::size_t a = axes(); a-- > 0;) {
            const long idx = flat % density;
            flat /= density;
            out[a] = box[a].lo + spacing(a) * static_cast<double>(idx);
        }
    }
    [[nodiscard]] bool on_boundary(long flat) const {
        for (std::size_t a = axes(); a-- > 0;) {
            const long idx = flat % density;
            flat /= density;
            if (idx == 0 || idx == density - 1) return true;
        }
        return false;
    }
    /// Flat index of the grid point nearest to z; -1 when z is off the box.
    [[nodiscard]] long nearest(std::span<const double> z) const {
        long flat = 0;
        for (std::size_t a = 0; a < axes(); ++a) {
            const double rel = (z[a] - box[a].lo) / spacing(a);
            const long idx = std::lround(rel);
            if (idx < 0 || idx >= density) return -1;
            flat = flat * density + idx;
        }
        return flat;
    }
};

int effective_density(int requested, std::size_t axes, long budget = 2'000'000) {
    int d = std::max(3, requested);
    for (;;) {
        double total = 1.0;
        for (std::size_t a = 0; a < axes; ++a) total *= d;
        if (total <= static_cast<double>(budget) || d == 3) return d;
        --d;
    }
}

/// Lazily memoized scalar field over the grid.
class GridField {
public:
    GridField(const GridSpec& grid, std::function<double(const double*)> f)
        : grid_(grid), f_(std::move(f)),
          values_(static_cast<std::size_t>(grid.total()), std::numeric_limits<double>::quiet_NaN()) {}

    double operator()(long flat) {
        double& v = values_[static_cast<std::size_t>(flat)];
        if (std::isnan(v)) {
            grid_.coords(flat, scratch_);
            v = f_(scratch_.data());
        }
        return v;
    }

private:
    const GridSpec& grid_;
    std::function<double(const double*)> f_;
    std::vector<double> values_;
    std::vector<double> scratch_;
};

struct FloodResult {
    std::vector<bool> mask;
    long count = 0;
    bool touches_boundary = false;
};

FloodResult flood_fill(const GridSpec& grid, GridField& V, long seed, double level) {
    FloodResult r;
    r.mask.assign(static_cast<std::size_t>(grid.total()), false);
    if (seed < 0 || V(seed) >= level) return r;

    const std::size_t axes = grid.axes();
    std::vector<long> strides(axes);
    long s = 1;
    for (std::size_t a = axes; a-- > 0;) {
        strides[a] = s;
        s *= grid.density;
    }

    std::deque<long> queue{seed};
    r.mask[static_cast<std::size_t>(seed)] = true;
    while (!queue.empty()) {
        const long p = queue.front();
        queue.pop_front();
        ++r.count;
        if (grid.on_boundary(p)) r.touches_boundary = true;
        long rest = p;
        for (std::size_t a = axes; a-- > 0;) {
            const long idx = rest % grid.density;
            rest /= grid.density;
            for (int dir = -1; dir <= 1; dir += 2) {
                const long nidx = idx + dir;
                if (nidx < 0 || nidx >= grid.density) continue;
                const long np = p + dir * strides[a];
                if (r.mask[static_cast<std::size_t>(np)]) continue;
                if (V(np) < level) {
                    r.mask[static_cast<std::size_t>(np)] = true;
                    queue.push_back(np);
                }
            }
        }
    }
    return r;
}

std::vector<Interval> validated_roa_box(const LienardSystem& sys, std::span<const Interval> box) {
    const auto n = static_cast<std::size_t>(sys.n);
    if (box.size() != 2 * n)
        throw DomainError("roa box: need 2n intervals (positions then velocities)");
    for (std::size_t a = 0; a < box.size(); ++a) {
        if (!(box[a].lo < box[a].hi) || !(box[a].lo <= 0.0 && 0.0 <= box[a].hi))
            throw DomainError("roa box: each interval must be nondegenerate and contain 0");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = std::max(sys.xdomain[i].lo, sys.omega_box[i].lo);
        const double hi = std::min(sys.xdomain[i].hi, sys.omega_box[i].hi);
        if (box[i].lo < lo || box[i].hi > hi)
            throw DomainError("roa box: position interval " + std::to_string(i + 1) +
                              " extends outside xdomain ∩ omega_box");
    }
    return {box.begin(), box.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// LyapunovData
// ---------------------------------------------------------------------------

LyapunovData::LyapunovData(const LienardSystem& sys) : sys_(sys) {
    const auto n = static_cast<std::size_t>(sys_.n);
    G_.reserve(n);
    axis_exact_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            G_.push_back(sys_.g[i].antiderivative(VarKind::X, static_cast<int>(i)));
            axis_exact_.push_back(true);
        } catch (const NonPolynomialError&) {
            G_.push_back(Expression());  // placeholder, quadrature path used instead
            axis_exact_.push_back(false);
            exact_ = false;
        }
    }
}

double LyapunovData::G(int i, double x) const {
    const auto ui = static_cast<std::size_t>(i);
    const auto n = static_cast<std::size_t>(sys_.n);
    if (axis_exact_[ui]) {
        std::vector<double> xs(n, 0.0), ys(n, 0.0);
        xs[ui] = x;
        return G_[ui].eval(EvalContext{xs, ys});
    }
    auto integrand = [&](double s) {
        std::vector<double> xs(n, 0.0), ys(n, 0.0);
        xs[ui] = s;
        return sys_.g[ui].eval(EvalContext{xs, ys});
    };
    return adaptive_simpson(integrand, 0.0, x, 1e-12);
}

double LyapunovData::V_flat(const double* z) const {
    const auto n = static_cast<std::size_t>(sys_.n);
    const EvalContext ctx{{z, n}, {z + n, n}};
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v += axis_exact_[i] ? G_[i].eval(ctx) : G(static_cast<int>(i), z[i]);
        v += 0.5 * z[n + i] * z[n + i];
    }
    return v;
}

double LyapunovData::Vdot_flat(const double* z) const {
    const auto n = static_cast<std::size_t>(sys_.n);
    const EvalContext ctx{{z, n}, {z + n, n}};
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double yi = z[n + i];
        s += yi * yi * sys_.f[i].eval(ctx);
    }
    return -s;
}

double LyapunovData::V(const State& z) const {
    if (z.n() != sys_.n) throw DomainError("V: state dimension mismatch");
    std::vector<double> flat(2 * static_cast<std::size_t>(sys_.n));
    z.to_flat(flat);
    return V_flat(flat.data());
}

double LyapunovData::Vdot(const State& z) const {
    if (z.n() != sys_.n) throw DomainError("Vdot: state dimension mismatch");
    std::vector<double> flat(2 * static_cast<std::size_t>(sys_.n));
    z.to_flat(flat);
    return Vdot_flat(flat.data());
}

// ---------------------------------------------------------------------------
// Positive definiteness on a sampled punctured ball
// ---------------------------------------------------------------------------

PositiveDefiniteReport check_positive_definite(const LyapunovData& ld, double radius,
                                               int grid_density) {
    const LienardSystem& sys = ld.system();
    const auto n = static_cast<std::size_t>(sys.n);
    if (!(radius > 0.0)) throw DomainError("positive-definite check: radius must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (radius > -sys.xdomain[i].lo || radius > sys.xdomain[i].hi)
            throw DomainError("positive-definite check: ball extends outside xdomain");
    }

    GridSpec grid;
    grid.box.assign(2 * n, Interval{-radius, radius});
    grid.density = effective_density(grid_density, 2 * n);

    PositiveDefiniteReport rep;
    rep.v_at_origin = ld.V(State::zero(sys.n));
    rep.min_value = std::numeric_limits<double>::infinity();

    std::vector<double> p;
    const long total = grid.total();
    for (long flat = 0; flat < total; ++flat) {
        grid.coords(flat, p);
        double norm2 = 0.0;
        for (double v : p) norm2 += v * v;
        if (norm2 == 0.0 || norm2 > radius * radius) continue;
        const double v = ld.V_flat(p.data());
        ++rep.samples;
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin = State::from_flat(p);
        }
    }
    rep.pass = rep.v_at_origin == 0.0 && rep.samples > 0 && rep.min_value > 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Sublevel components and the region-of-attraction estimate
// ---------------------------------------------------------------------------

bool ComponentGrid::contains(std::span<const double> z_flat) const {
    GridSpec grid{box, density};
    const long idx = grid.nearest(z_flat);
    return idx >= 0 && mask[static_cast<std::size_t>(idx)];
}

ComponentGrid sublevel_component(const LyapunovData& ld, std::span<const Interval> box,
                                 double level, int grid_density) {
    GridSpec grid{validated_roa_box(ld.system(), box), 0};
    grid.density = effective_density(grid_density, grid.axes());

    GridField V(grid, [&](const double* z) { return ld.V_flat(z); });
    const std::vector<double> origin(grid.axes(), 0.0);
    const FloodResult r = flood_fill(grid, V, grid.nearest(origin), level);

    ComponentGrid out;
    out.box = grid.box;
    out.density = grid.density;
    out.level = level;
    out.mask = r.mask;
    out.count = r.count;
    out.touches_boundary = r.touches_boundary;
    return out;
}

RoaReport estimate_roa_level(const LyapunovData& ld, std::span<const Interval> box,
                             RoaOptions opts) {
    GridSpec grid{validated_roa_box(ld.system(), box), 0};
    grid.density = effective_density(opts.grid_density, grid.axes());

    RoaReport rep;
    rep.grid_density = grid.density;
    for (std::size_t a = 0; a < grid.axes(); ++a)
        rep.resolution = std::max(rep.resolution, grid.spacing(a));

    GridField V(grid, [&](const double* z) { return ld.V_flat(z); });
    GridField Vdot(grid, [&](const double* z) { return ld.Vdot_flat(z); });

    // First candidate: the minimum of V on the box boundary. Any component of
    // {V < c0} that contains O and stays off the boundary lies strictly inside.
    double c0 = std::numeric_limits<double>::infinity();
    const long total = grid.total();
    for (long flat = 0; flat < total; ++flat)
        if (grid.on_boundary(flat)) c0 = std::min(c0, V(flat));
    rep.boundary_min = c0;
    if (!(c0 > 0.0)) {
        rep.note = "V is not positive on the box boundary; no sublevel set can be certified";
        return rep;
    }

    const std::vector<double> origin_coords(grid.axes(), 0.0);
    const long seed = grid.nearest(origin_coords);
    std::string last_reason;
    std::vector<double> p;

    double level = c0;
    for (int k = 0; k < opts.max_candidates; ++k, level *= 0.9) {
        ++rep.candidates_tried;
        const FloodResult comp = flood_fill(grid, V, seed, level);
        if (comp.count == 0) {
            last_reason = "origin grid point not below the level";
            continue;
        }
        if (comp.touches_boundary) {
            last_reason = "component touches the box boundary";
            continue;
        }
        double worst = -std::numeric_limits<double>::infinity();
        long worst_at = -1;
        bool ok = true;
        for (long flat = 0; flat < total && ok; ++flat) {
            if (!comp.mask[static_cast<std::size_t>(flat)]) continue;
            const double vd = Vdot(flat);
            if (vd > worst) {
                worst = vd;
                worst_at = flat;
            }
            if (vd > opts.vdot_tol) {
                grid.coords(flat, p);
                last_reason = "positive V-dot sample inside the component";
                ok = false;
            }
        }
        if (!ok) continue;

        rep.certified = true;
        rep.level = level;
        rep.component_points = comp.count;
        rep.worst_vdot = worst;
        if (worst_at >= 0) {
            grid.coords(worst_at, p);
            rep.worst_vdot_point = State::from_flat(p);
        }
        rep.note = "certified on a " + std::to_string(grid.density) + "-per-axis grid";
        return rep;
    }
    rep.note = "no candidate level certified; last rejection: " + last_reason;
    return rep;
}

}  // namespace lienard
