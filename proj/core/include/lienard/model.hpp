#pragma once

#include "lienard/errors.hpp"
#include "lienard/expr.hpp"

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lienard {

/// A real interval; open vs. closed is decided by the consumer.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Phase-space point Z = (x1…xn, y1…yn): positions and velocities.
struct State {
    std::vector<double> x;
    std::vector<double> y;

    State() = default;
    State(std::vector<double> x_, std::vector<double> y_);

    [[nodiscard]] static State zero(int n);
    /// Unpack a flat [x..., y...] vector of even length.
    [[nodiscard]] static State from_flat(std::span<const double> z);

    [[nodiscard]] int n() const { return static_cast<int>(x.size()); }
    [[nodiscard]] double norm() const;
    void to_flat(std::span<double> out) const;

    friend bool operator==(const State&, const State&) = default;
};

/// The coupled system x_i'' + f_i(X)·x_i' + g_i(x_i) = 0 in first-order form,
/// together with the boxes the analysis runs over: `xdomain` is the open box
/// Π(a_i, b_i) where the restoring terms are trusted, `omega_box` the closed
/// box Ω on which the damping sign condition is checked.
struct LienardSystem {
    int n = 0;
    std::vector<Expression> f;  // damping, f_i over x1…xn
    std::vector<Expression> g;  // restoring, g_i over x_i only
    std::vector<Interval> xdomain;
    std::vector<Interval> omega_box;
    std::string name;
    std::vector<std::string> warnings;  // e.g. non-polynomial f/g notes
};

/// Validate and assemble a system. Enforces: matching sizes; a_i < 0 < b_i;
/// omega_box containing the origin; g_i depending on x_i only; |g_i(0)| ≤ 1e-12;
/// f_i over position variables with indices < n. Non-polynomial f_i/g_i are
/// allowed but recorded in `warnings` (hypothesis checks and exact
/// antiderivatives rely on polynomial structure).
[[nodiscard]] LienardSystem make_system(int n, std::vector<Expression> f, std::vector<Expression> g,
                                        std::vector<Interval> xdomain, std::vector<Interval> omega_box,
                                        std::string name);

/// Built-in example systems: "intro", "squares", "ellipses", "cubic",
/// "oscillator". All use xdomain (−5, 5) and omega_box [−5, 5] per axis.
[[nodiscard]] LienardSystem builtin(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_names();

[[nodiscard]] bool in_xdomain(const LienardSystem& sys, std::span<const double> x);
[[nodiscard]] bool in_omega(const LienardSystem& sys, std::span<const double> x);

/// Right-hand side (x', y') = (y, −g(x) − y ⊙ f(x)). Throws DomainError when
/// z.x is outside xdomain or omega_box.
[[nodiscard]] State vector_field(const LienardSystem& sys, const State& z);

/// Unchecked flat-layout right-hand side for integrator inner loops;
/// z and dz are [x..., y...] of length 2n.
void vector_field_flat(const LienardSystem& sys, const double* z, double* dz);

/// T-periodic forcing h(t, X, Y, eps) added to the velocity block.
struct Perturbation {
    std::vector<Expression> h;
    double T = 0.0;
};

/// h_i = eps · c_i · cos(2πt/T + φ_i). The overall eps factor makes eps = 0
/// recover the unperturbed field exactly; reports record this convention.
/// `phases` may be empty (all zero).
[[nodiscard]] Perturbation make_cosine_perturbation(int n, double T, std::span<const double> amplitudes,
                                                    std::span<const double> phases = {});

/// Check that pert matches the system dimension and references only
/// x1…xn, y1…yn, t, eps. Throws DomainError otherwise.
void validate_perturbation(const LienardSystem& sys, const Perturbation& pert);

[[nodiscard]] State perturbed_vector_field(const LienardSystem& sys, const Perturbation& pert,
                                           double eps, double t, const State& z);
void perturbed_vector_field_flat(const LienardSystem& sys, const Perturbation& pert, double eps,
                                 double t, const double* z, double* dz);

/// What the eigenvalue formula λ_i = (−f_i(O) ± sqrt(f_i(O)² − 4g_i'(0)))/2
/// can conclude: `clear` when Π g_i'(0) ≠ 0 and every f_i(O) ≠ 0;
/// `degenerate` when some g_i'(0) = 0; `inconclusive` when some f_i(O) = 0
/// with g_i'(0) > 0 (pure-imaginary pair — the Lyapunov route is required).
enum class LinearizationFlag { clear, degenerate, inconclusive };

[[nodiscard]] const char* to_string(LinearizationFlag flag);

struct Linearization {
    std::vector<std::complex<double>> eigenvalues;  // 2n, grouped per component
    LinearizationFlag flag = LinearizationFlag::clear;
    std::vector<double> f_at_origin;
    std::vector<double> g_prime_at_zero;
    bool finite_difference_g = false;  // true when some g_i'(0) came from differencing
    std::string note;
};

[[nodiscard]] Linearization linearization_eigenvalues(const LienardSystem& sys);

}  // namespace lienard
