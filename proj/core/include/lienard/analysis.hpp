#pragma once

#include "lienard/integrate.hpp"
#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"

#include <string>
#include <vector>

namespace lienard {

// ---------------------------------------------------------------------------
// Strata of the vanishing set W_O = { Σ y_i² f_i(X) = 0 }
// ---------------------------------------------------------------------------

/// Which part of W_O a point lies on: every velocity zero (case_a), a mixed
/// pattern where y_i = 0 for i in a subset S and f_j = 0 for the rest
/// (case_b), or every damping factor zero (case_c).
enum class Stratum { case_a, case_b, case_c };
[[nodiscard]] std::string to_string(Stratum s);

struct WOPoint {
    State z;
    Stratum stratum = Stratum::case_a;
    unsigned mask = 0;   ///< case_b: bit i set ⇔ y_{i+1} = 0 (i ∈ S)
    double vdot = 0.0;   ///< V̇ at z, recorded at construction (|V̇| < 1e-10)
};

struct SeedOptions {
    int count = 20;
    unsigned long seed = 0x0a51deull;
    double y_min = 0.1;  ///< free velocities are drawn with |y| in [y_min, y_max],
    double y_max = 1.0;  ///< keeping departures from W_O fast
    double x_min = 0.1;  ///< case_a: at least one |x_i| this large (origin excluded)
    int max_attempts = 200;       ///< draw attempts per requested point
    double constraint_tol = 1e-12;  ///< max |f_j| accepted on the solved locus
};

struct SeedReport {
    std::vector<WOPoint> points;
    Stratum stratum = Stratum::case_a;
    unsigned mask = 0;
    std::string note;  ///< set when the stratum is empty or undersampled
};

/// Sample points exactly on the requested stratum of W_O, excluding the
/// origin. case_b requires a nonempty proper subset mask (bit i ⇔ y_{i+1}
/// pinned to 0) and solves f_j(X) = 0 for j outside the subset with the
/// remaining x-coordinates drawn uniformly; case_c places X on the polished
/// common zeros of all f_i. An empty stratum yields an empty list with a
/// note, never an error.
[[nodiscard]] SeedReport seed_WO_points(const LienardSystem& sys, Stratum stratum,
                                        unsigned mask = 0, const SeedOptions& opts = {});

// ---------------------------------------------------------------------------
// Non-invariance probe
// ---------------------------------------------------------------------------

struct NonInvarianceOptions {
    double horizon = 1.0;
    double threshold = 1e-10;  ///< departure = first V̇ < −threshold
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

struct NonInvarianceReport {
    bool left = false;
    double leave_time = 0.0;
    double vdot_at_leave = 0.0;
    WOPoint point;
    std::string note;
    Trajectory trajectory;  ///< the probe orbit, for inspection and plotting
};

/// Integrate from a W_O point and find the first time V̇ drops below
/// −threshold: the measurable consequence of leaving the vanishing set.
/// No crossing within the horizon is a reported failure (with the orbit
/// attached), not an exception. The origin is rejected: it is the one
/// genuinely invariant point of W_O.
[[nodiscard]] NonInvarianceReport non_invariance_probe(const LienardSystem& sys,
                                                       const LyapunovData& ld, const WOPoint& p,
                                                       const NonInvarianceOptions& opts = {});
[[nodiscard]] NonInvarianceReport non_invariance_probe(const LienardSystem& sys, const WOPoint& p,
                                                       const NonInvarianceOptions& opts = {});

// ---------------------------------------------------------------------------
// Attraction verification
// ---------------------------------------------------------------------------

struct AttractionOptions {
    int samples = 100;
    double t_max = 500.0;
    double convergence_radius = 1e-3;  ///< converged ⟹ terminal |z| below this
    int grid_density = 31;             ///< sublevel-component grid per axis
    unsigned long seed = 0x5eedu;
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    bool check_hypotheses = true;  ///< run the hypothesis battery and record it
};

struct AttractionSample {
    std::vector<double> z0;
    double terminal_norm = 0.0;
    double terminal_v = 0.0;
    double time = 0.0;  ///< when integration stopped (early on convergence)
    bool converged = false;
    double worst_v_increase = 0.0;  ///< max V(t_{k+1}) − V(t_k) along the orbit
};

struct AttractionReport {
    double c_level = 0.0;
    int samples = 0;
    int converged_count = 0;
    double convergence_radius = 0.0;
    double t_max = 0.0;
    std::vector<AttractionSample> per_sample;
    int slowest_index = -1;  ///< converged sample with the largest stop time
    bool hypotheses_checked = false;
    bool hypotheses_pass = false;
    std::string note;

    [[nodiscard]] double fraction() const {
        return samples > 0 ? static_cast<double>(converged_count) / samples : 0.0;
    }
};

/// Draw initial states uniformly from the origin's connected component of
/// {V < c_level} (rejection sampling on a grid-flooded component), integrate
/// each to t_max, and report the converged fraction. When the hypothesis
/// battery is enabled and fails, the run still proceeds but the report is
/// marked as empirical-only.
[[nodiscard]] AttractionReport verify_attraction(const LienardSystem& sys, const LyapunovData& ld,
                                                 double c_level,
                                                 const AttractionOptions& opts = {});
[[nodiscard]] AttractionReport verify_attraction(const LienardSystem& sys, double c_level,
                                                 const AttractionOptions& opts = {});

}  // namespace lienard
