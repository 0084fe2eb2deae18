#pragma once

#include "lienard/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace lienard {

/// The energy function V(Z) = Σ (G_i(x_i) + y_i²/2) with G_i(x) = ∫₀ˣ g_i,
/// and its orbital derivative V̇(Z) = −Σ y_i² f_i(X) (closed formula, not a
/// difference quotient). G_i is an exact polynomial antiderivative when g_i
/// is polynomial, otherwise an adaptive-quadrature evaluator (tol 1e-12).
/// Holds its own copy of the system, so it stays valid independently.
class LyapunovData {
public:
    explicit LyapunovData(const LienardSystem& sys);

    [[nodiscard]] double V(const State& z) const;
    [[nodiscard]] double Vdot(const State& z) const;

    /// Flat-layout fast paths; z is [x…, y…] of length 2n.
    [[nodiscard]] double V_flat(const double* z) const;
    [[nodiscard]] double Vdot_flat(const double* z) const;

    /// Per-axis antiderivative G_i(x).
    [[nodiscard]] double G(int i, double x) const;

    /// True when every G_i is in closed form.
    [[nodiscard]] bool exact() const { return exact_; }

    [[nodiscard]] const LienardSystem& system() const { return sys_; }

private:
    LienardSystem sys_;
    std::vector<Expression> G_;        // valid where g_i is polynomial
    std::vector<bool> axis_exact_;
    bool exact_ = true;
};

struct PositiveDefiniteReport {
    bool pass = false;
    double v_at_origin = 0.0;
    double min_value = 0.0;  // smallest sampled V on the punctured ball
    State argmin;
    long samples = 0;
};

/// Sample V on a grid restricted to the punctured ball of the given radius
/// about the origin: pass iff V(O) = 0 and every sample is positive.
[[nodiscard]] PositiveDefiniteReport check_positive_definite(const LyapunovData& ld, double radius,
                                                             int grid_density);

/// Grid mask of the connected component of {V < level} containing the origin,
/// over a 2n-dimensional box (x-intervals then y-intervals), explored by
/// flood fill on grid-point adjacency.
struct ComponentGrid {
    std::vector<Interval> box;
    int density = 0;          // grid points per axis
    double level = 0.0;
    std::vector<bool> mask;   // density^(2n) entries, true = in component
    long count = 0;
    bool touches_boundary = false;  // component reaches the outermost grid layer

    /// Nearest-grid-point membership test for an arbitrary state in the box.
    [[nodiscard]] bool contains(std::span<const double> z_flat) const;
};

[[nodiscard]] ComponentGrid sublevel_component(const LyapunovData& ld,
                                               std::span<const Interval> box, double level,
                                               int grid_density);

struct RoaOptions {
    int grid_density = 31;    // per axis; auto-reduced to keep the grid ≤ ~2e6 points
    int max_candidates = 60;  // levels c0·0.9^k tried
    double vdot_tol = 1e-12;  // V̇ ≤ tol counts as nonpositive
};

struct RoaReport {
    bool certified = false;
    double level = 0.0;
    double boundary_min = 0.0;  // min of V on the box boundary grid — the first candidate
    int grid_density = 0;       // effective density after any auto-reduction
    double resolution = 0.0;    // largest grid spacing across axes
    double worst_vdot = 0.0;    // max V̇ over the certified component
    State worst_vdot_point;
    long component_points = 0;
    int candidates_tried = 0;
    std::string note;
};

/// Largest level c from the descending candidate sequence whose origin
/// component (i) stays strictly inside the box and (ii) has V̇ ≤ tol at every
/// grid point. The claim is "certified at the reported grid resolution" —
/// a sampling statement, not an interval proof. The box must contain the
/// origin and its x-part must lie inside xdomain ∩ omega_box.
[[nodiscard]] RoaReport estimate_roa_level(const LyapunovData& ld, std::span<const Interval> box,
                                           RoaOptions opts = {});

}  // namespace lienard
