#pragma once

#include "lienard/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace lienard {

/// Nonnegativity of x·g_i(x) sampled on (a_i, 0) ∪ (0, b_i), per axis.
struct RestoringSignCheck {
    bool pass = true;
    int density = 0;        ///< samples per half-axis
    long samples = 0;
    int witness_axis = -1;  ///< 0-based axis of the first violation, -1 = none
    double witness_x = 0.0;
    double witness_value = 0.0;  ///< g_i(witness_x)
};

/// Nonnegativity of every f_i sampled on a full grid over the omega box.
struct DampingSignCheck {
    bool pass = true;
    int density = 0;  ///< effective per-axis density after any budget reduction
    long samples = 0;
    int witness_axis = -1;
    std::vector<double> witness_point;
    double witness_value = 0.0;  ///< f_i at the witness
};

/// x·g_i(x) > 0 away from zero, sampled with `density` points per half-axis
/// (at least 100). The first violating sample, scanning axes in order and
/// each axis left to right, becomes the witness.
[[nodiscard]] RestoringSignCheck check_h1(const LienardSystem& sys, int density = 201);

/// f_i(X) ≥ −1e-12 on a `density`-per-axis grid over Ω. The density is
/// reduced automatically so the grid stays within ~1e6 points.
[[nodiscard]] DampingSignCheck check_h2(const LienardSystem& sys, int density = 201);

// ---------------------------------------------------------------------------
// Constraint sets  { x_i = 0 for i ∈ S } ∩ { f_j = 0 for j ∉ S }
// ---------------------------------------------------------------------------

/// The square system induced by a subset S of axes: coordinates in S are
/// pinned to zero and eliminated, leaving the equations f_j = 0 (j ∉ S) in
/// the remaining free coordinates. Holds its own expression copies.
class ConstraintSet {
public:
    ConstraintSet(const LienardSystem& sys, unsigned mask);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] unsigned mask() const { return mask_; }
    [[nodiscard]] int free_count() const { return static_cast<int>(free_.size()); }
    [[nodiscard]] const std::vector<int>& free_axes() const { return free_; }
    [[nodiscard]] bool pinned(int axis) const { return (mask_ >> axis) & 1u; }

    /// Full-space point from free coordinates (pinned axes exactly 0).
    [[nodiscard]] std::vector<double> embed(std::span<const double> u) const;

    /// Residuals F_j(u) of the active f-equations, ascending j.
    void residuals(std::span<const double> u, std::span<double> out) const;
    [[nodiscard]] double max_residual(std::span<const double> u) const;

    /// Row-major d×d Jacobian ∂F_j/∂u_k; analytic when every active f_j is
    /// polynomial, central finite differences otherwise.
    void jacobian(std::span<const double> u, std::vector<double>& J) const;

    /// Human-readable equation list, e.g. "x2 = 0, f1 = 0".
    [[nodiscard]] std::string describe() const;

private:
    int n_ = 0;
    unsigned mask_ = 0;
    std::vector<int> free_;             // axes not in S, ascending
    std::vector<Expression> eqs_;       // f_j for j ∉ S, ascending j
    std::vector<std::vector<Expression>> grads_;  // grads_[e][k] = ∂eqs_[e]/∂u_k
    bool analytic_ = true;
};

enum class IsolationVerdict { isolated, suspected_continuum, inconclusive };
[[nodiscard]] std::string to_string(IsolationVerdict v);

struct ProbeOptions {
    /// Decreasing probe radii. The smallest stays above √θ so that an
    /// equation vanishing to fourth order at an isolated root (a squared
    /// factor whose linear part also vanishes, e.g. (x²)²) still clears
    /// the quadratic threshold: r⁴ > θ·r² needs r > √θ.
    std::vector<double> radii{0.2, 0.1, 0.05};
    double clearance_theta = 1e-3;  ///< isolated needs min residual > θ·r² at each r
    double root_tol = 1e-9;         ///< continuum needs min residual < this at every r
    int starts = 32;                ///< minimizer starts per radius (free dim ≥ 3)
    unsigned long seed = 0x9e3779b97f4a7c15ull;
};

/// Evidence from probing spheres around a root in the free coordinates.
struct ProbeResult {
    IsolationVerdict verdict = IsolationVerdict::inconclusive;
    std::vector<double> radii;
    std::vector<double> min_residuals;  ///< smallest max|F| found on each sphere
};

/// Classify a located root by minimizing the constraint residual on spheres
/// of decreasing radius about it: residuals clearly bounded away from zero
/// (> θr², matching the quadratic vanishing of squared factors) mean the
/// root is isolated; residuals at the root tolerance on every sphere mean
/// the zero set continues through the sphere.
[[nodiscard]] ProbeResult isolation_probe(const ConstraintSet& cs, std::span<const double> root,
                                          const ProbeOptions& opts = {});

struct SolveOptions {
    double root_tol = 1e-9;        ///< accept a polished point below this residual
    double cluster_radius = 1e-5;  ///< merge radius; smaller-residual point wins
    double seed_cell = 0.05;       ///< cell width that stops subdivision and seeds polishing
    int max_depth = 40;
    long max_cells = 200'000;
    int max_roots = 64;
    unsigned long shuffle_seed = 0;  ///< nonzero permutes the subdivision order
    ProbeOptions probe;
};

struct RootRecord {
    std::vector<double> x;   ///< full-space root; pinned coordinates exactly 0
    double residual = 0.0;   ///< max |equation| after polishing
    IsolationVerdict verdict = IsolationVerdict::inconclusive;
    std::vector<double> probe_min_residuals;
};

struct RootFinding {
    unsigned mask = 0;
    int n = 0;
    std::string equations;          ///< ConstraintSet::describe()
    std::vector<Interval> box;      ///< full-space search box
    std::vector<RootRecord> roots;  ///< sorted lexicographically by x
    bool budget_exhausted = false;  ///< subdivision budget hit: treat as inconclusive
    long cells_visited = 0;
    std::string note;
};

/// Locate every solution of the constraint set inside the box (full-space,
/// n intervals) by recursive subdivision with gradient-based exclusion,
/// Levenberg–Marquardt polishing, clustering, and per-root isolation probes.
[[nodiscard]] RootFinding solve_constraint_set(const LienardSystem& sys, unsigned mask,
                                               std::span<const Interval> box,
                                               const SolveOptions& opts = {});

struct CheckAllOptions {
    int h1_density = 201;
    int h2_density = 201;
    SolveOptions solve;
};

struct HypothesisReport {
    RestoringSignCheck h1;
    DampingSignCheck h2;
    std::vector<RootFinding> sets;  ///< index = subset bitmask, 0 … 2ⁿ−1
    bool pass = false;
    std::string note;
};

/// Run the full battery: the two sign checks plus root isolation for all 2ⁿ
/// subset constraint sets over Ω. Overall PASS requires both sign checks to
/// pass, every budget respected, and every recovered root isolated (an empty
/// root set passes vacuously). Dimensions above 12 are rejected.
[[nodiscard]] HypothesisReport check_all(const LienardSystem& sys, const CheckAllOptions& opts = {});

}  // namespace lienard
