#pragma once

#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lienard {

/// Why an integration stopped.
enum class Termination {
    reached_t_end,        ///< integrated to t1
    converged_to_origin,  ///< |Z| stayed below the convergence radius
    left_domain,          ///< a position coordinate exited xdomain
    step_underflow,       ///< step size shrank below the resolvable scale at t
};

[[nodiscard]] std::string to_string(Termination term);

struct IntegrateOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    /// Early stop: terminate once |Z|₂ stays below this radius for ten
    /// consecutive accepted steps (hysteresis against transient dips).
    /// 0 disables the check.
    double convergence_radius = 1e-9;
    double h_init = 0.0;     ///< 0 = choose automatically
    double h_max = 0.0;      ///< 0 = |t1 - t0|
    double fixed_step = 0.0; ///< > 0 disables error control and steps uniformly
    long max_steps = 2'000'000;
    bool check_domain = true;  ///< stop with left_domain when X exits xdomain
    bool record_dense = true;  ///< keep interpolation data for sample()
};

/// Interpolation data for one accepted step: a quartic in θ = (t - t0)/h.
struct DenseStep {
    double t0 = 0.0, h = 0.0;
    std::vector<double> r1, r2, r3, r4, r5;
};

/// An integration result: states at accepted-step stamps plus bookkeeping.
/// States use the flat layout [x1…xn, y1…yn].
struct Trajectory {
    int n = 0;
    std::string system_name;
    double rel_tol = 0.0, abs_tol = 0.0;

    std::vector<double> t;               ///< stamps, t.front() = t0
    std::vector<std::vector<double>> z;  ///< flat state at each stamp
    std::vector<double> V;               ///< energy at each stamp
    std::vector<double> Vdot;            ///< orbital derivative −Σ y_i² f_i at each stamp

    Termination termination = Termination::reached_t_end;
    long accepted = 0, rejected = 0, field_evals = 0;

    std::vector<DenseStep> dense;  ///< empty when record_dense was off

    [[nodiscard]] double t_end() const { return t.back(); }
    [[nodiscard]] State state(std::size_t k) const { return State::from_flat(z.at(k)); }
    [[nodiscard]] State final_state() const { return State::from_flat(z.back()); }

    /// Continuous-output evaluation at any time covered by the run. Stamp
    /// times return the stored state unchanged; other times use the stepwise
    /// quartic interpolant. Requires record_dense.
    [[nodiscard]] State sample(double time) const;
};

/// Integrate Z' = (Y, −g(X) − Y ⊙ f(X)) from z0 over [t0, t1] (t1 < t0 runs
/// backward) with an embedded fifth-order pair, PI step control, and
/// continuous output. The overloads without LyapunovData build it internally.
[[nodiscard]] Trajectory integrate(const LienardSystem& sys, const State& z0, double t0, double t1,
                                   const IntegrateOptions& opts = {});
[[nodiscard]] Trajectory integrate(const LienardSystem& sys, const LyapunovData& ld, const State& z0,
                                   double t0, double t1, const IntegrateOptions& opts = {});

/// Same, for the T-periodically forced field. The recorded V and V̇ columns
/// keep their autonomous meaning: they are evaluated at the state, not
/// differentiated along the forced flow.
[[nodiscard]] Trajectory integrate_perturbed(const LienardSystem& sys, const Perturbation& pert,
                                             double eps, const State& z0, double t0, double t1,
                                             const IntegrateOptions& opts = {});
[[nodiscard]] Trajectory integrate_perturbed(const LienardSystem& sys, const LyapunovData& ld,
                                             const Perturbation& pert, double eps, const State& z0,
                                             double t0, double t1, const IntegrateOptions& opts = {});

/// CSV dump: a `#` header line naming the system and tolerances, then
/// `t,x1,…,xn,y1,…,yn,V,Vdot` rows with full double precision.
void write_csv(const Trajectory& traj, std::ostream& os);
void write_csv(const Trajectory& traj, const std::string& path);

}  // namespace lienard
