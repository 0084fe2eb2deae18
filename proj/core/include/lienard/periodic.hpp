#pragma once

#include "lienard/integrate.hpp"
#include "lienard/model.hpp"

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace lienard {

struct PeriodMapOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-11;
};

/// The time-T solution map of the ε-perturbed system: z0 ↦ z(T). Fixed
/// points are initial states of T-periodic solutions. Throws if the
/// integration does not reach T (domain exit, step underflow).
[[nodiscard]] State period_map(const LienardSystem& sys, const Perturbation& pert, double eps,
                               const State& z0, const PeriodMapOptions& opts = {});

struct ShootOptions {
    double newton_tol = 1e-10;  ///< accept when max |period_map(z) − z| is below this
    int max_iterations = 50;
    int damped_trials = 8;      ///< step-halving attempts before declaring no progress
    double fd_step = 1e-7;      ///< forward-difference step for the monodromy columns
    double rel_tol = 1e-11;     ///< working integration tolerance
    double abs_tol = 1e-11;
    double verify_rel_tol = 1e-12;  ///< residual is re-measured at this tighter tolerance
    int dense_samples = 256;        ///< orbit samples per period (≥ 200)
};

struct PeriodicOrbit {
    double eps = 0.0;
    double T = 0.0;
    State z_star;
    double residual = 0.0;  ///< |z(T) − z*|, re-verified at the tighter tolerance
    bool converged = false;
    bool jacobian_singular = false;  ///< shooting matrix singular: a multiplier sits near 1
    int newton_iterations = 0;
    std::string note;

    std::vector<double> sample_times;           ///< uniform grid over [0, T]
    std::vector<std::vector<double>> samples;   ///< flat states at those times
    double amplitude = 0.0;     ///< sup-norm over the period of the state norm
    double x1_amplitude = 0.0;  ///< sup-norm of the first position component

    std::vector<std::complex<double>> multipliers;  ///< Floquet multipliers, |·| descending
    std::vector<double> multiplier_moduli;
};

/// Damped Newton iteration on F(z) = period_map(z) − z from the given guess,
/// with finite-difference monodromy. Divergence and singular shooting
/// matrices are reported on the returned orbit (converged = false, note set),
/// never thrown.
[[nodiscard]] PeriodicOrbit shoot(const LienardSystem& sys, const Perturbation& pert, double eps,
                                  const State& guess, const ShootOptions& opts = {});

struct ContinuationResult {
    std::vector<PeriodicOrbit> orbits;  ///< one per ε, in list order
    bool trend_pass = false;            ///< amplitudes shrink ~linearly with ε
    bool aborted = false;               ///< a shoot failed; later ε were not attempted
    std::string note;
};

/// Shoot at each ε in a strictly decreasing list, warm-starting from the
/// previous orbit. A trailing ε = 0 appends the exact null solution. The
/// trend verdict passes when amplitudes strictly decrease and amplitude/ε
/// stays within a factor-2 band — the computable surrogate for the orbits
/// collapsing onto the origin as the forcing vanishes.
[[nodiscard]] ContinuationResult continuation(const LienardSystem& sys, const Perturbation& pert,
                                              std::span<const double> eps_list, const State& guess,
                                              const ShootOptions& opts = {});

/// CSV dump of the sampled orbit: t, state components, state norm.
void write_csv(const PeriodicOrbit& orbit, std::ostream& out);
void write_csv(const PeriodicOrbit& orbit, const std::string& path);

}  // namespace lienard
