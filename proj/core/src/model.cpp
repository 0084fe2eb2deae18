#include "lienard/model.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace lienard {

namespace {

constexpr double kZeroTol = 1e-12;

void check_finite(const State& z) {
    for (double v : z.x)
        if (!std::isfinite(v)) throw DomainError("state has a non-finite position entry");
    for (double v : z.y)
        if (!std::isfinite(v)) throw DomainError("state has a non-finite velocity entry");
}

}  // namespace

State::State(std::vector<double> x_, std::vector<double> y_) : x(std::move(x_)), y(std::move(y_)) {
    if (x.size() != y.size()) throw DomainError("state: position/velocity dimension mismatch");
}

State State::zero(int n) {
    if (n < 1) throw DomainError("state: dimension must be positive");
    return State(std::vector<double>(static_cast<std::size_t>(n), 0.0),
                 std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

State State::from_flat(std::span<const double> z) {
    if (z.size() % 2 != 0 || z.empty()) throw DomainError("state: flat vector must have even positive length");
    const std::size_t n = z.size() / 2;
    return State(std::vector<double>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)),
                 std::vector<double>(z.begin() + static_cast<std::ptrdiff_t>(n), z.end()));
}

double State::norm() const {
    double s = 0.0;
    for (double v : x) s += v * v;
    for (double v : y) s += v * v;
    return std::sqrt(s);
}

void State::to_flat(std::span<double> out) const {
    const std::size_t n = x.size();
    if (out.size() != 2 * n) throw DomainError("state: flat output has wrong length");
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i];
    for (std::size_t i = 0; i < n; ++i) out[n + i] = y[i];
}

LienardSystem make_system(int n, std::vector<Expression> f, std::vector<Expression> g,
                          std::vector<Interval> xdomain, std::vector<Interval> omega_box,
                          std::string name) {
    if (n < 1) throw DomainError("system: dimension must be positive");
    const auto un = static_cast<std::size_t>(n);
    if (f.size() != un || g.size() != un)
        throw DomainError("system: need exactly n damping and n restoring expressions");
    if (xdomain.size() != un || omega_box.size() != un)
        throw DomainError("system: need exactly n intervals for xdomain and omega_box");

    LienardSystem sys;
    sys.n = n;
    sys.name = std::move(name);

    for (int i = 0; i < n; ++i) {
        const auto& dom = xdomain[static_cast<std::size_t>(i)];
        if (!(dom.lo < 0.0 && 0.0 < dom.hi))
            throw DomainError("system: xdomain interval " + std::to_string(i + 1) +
                              " must satisfy a < 0 < b");
        const auto& om = omega_box[static_cast<std::size_t>(i)];
        if (!(om.lo <= 0.0 && 0.0 <= om.hi && om.lo < om.hi))
            throw DomainError("system: omega_box interval " + std::to_string(i + 1) +
                              " must be nondegenerate and contain 0");
    }

    for (int i = 0; i < n; ++i) {
        const Expression& gi = g[static_cast<std::size_t>(i)];
        for (const VarRef& v : gi.variables()) {
            if (v.kind != VarKind::X || v.index != i)
                throw DomainError("system: g" + std::to_string(i + 1) + " may depend only on x" +
                                  std::to_string(i + 1) + " but references '" +
                                  var_name(v.kind, v.index) + "'");
        }
        std::vector<double> origin(un, 0.0), yzero(un, 0.0);
        const double g0 = gi.eval(EvalContext{origin, yzero});
        if (std::fabs(g0) > kZeroTol)
            throw DomainError("system: g" + std::to_string(i + 1) + "(0) = " + std::to_string(g0) +
                              ", expected 0");
        if (!gi.is_polynomial())
            sys.warnings.push_back("g" + std::to_string(i + 1) +
                                   " is not polynomial: antiderivatives fall back to quadrature");
    }

    for (int i = 0; i < n; ++i) {
        const Expression& fi = f[static_cast<std::size_t>(i)];
        for (const VarRef& v : fi.variables()) {
            if (v.kind != VarKind::X || v.index >= n)
                throw DomainError("system: f" + std::to_string(i + 1) +
                                  " may depend only on x1…x" + std::to_string(n) +
                                  " but references '" + var_name(v.kind, v.index) + "'");
        }
        if (!fi.is_polynomial())
            sys.warnings.push_back("f" + std::to_string(i + 1) +
                                   " is not polynomial: hypothesis root isolation uses "
                                   "finite-difference gradients");
    }

    sys.f = std::move(f);
    sys.g = std::move(g);
    sys.xdomain = std::move(xdomain);
    sys.omega_box = std::move(omega_box);
    return sys;
}

LienardSystem builtin(std::string_view name) {
    const int n = 2;
    const std::vector<Interval> xdom{{-5.0, 5.0}, {-5.0, 5.0}};
    const std::vector<Interval> omega{{-5.0, 5.0}, {-5.0, 5.0}};
    auto build = [&](std::string_view f1, std::string_view f2, std::string_view g1,
                     std::string_view g2) {
        return make_system(n, {parse(f1), parse(f2)}, {parse(g1), parse(g2)}, xdom, omega,
                           std::string(name));
    };
    if (name == "intro")
        return build("(x1-x2)^2", "(x1+x2^2)^2", "x1", "x2");
    if (name == "squares")
        return build("x1^2*(x2-1)^2*(x1+1)^2", "x2^2*(x1-1)^2*(x2+1)^2", "x1", "x2");
    if (name == "ellipses")
        return build("(x1^2+2*x2^2-1)^2", "(2*x1^2+x2^2-1)^2", "x1", "x2");
    if (name == "cubic")
        return build("x1^2*(x2-1)^2*(x1+1)^2", "x2^2*(x1-1)^2*(x2+1)^2", "x1^3", "x2^3");
    if (name == "oscillator")
        return build("0", "0", "x1", "x2");
    throw Error("unknown builtin system '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
    return {"intro", "squares", "ellipses", "cubic", "oscillator"};
}

bool in_xdomain(const LienardSystem& sys, std::span<const double> x) {
    for (int i = 0; i < sys.n; ++i) {
        const auto& d = sys.xdomain[static_cast<std::size_t>(i)];
        const double v = x[static_cast<std::size_t>(i)];
        if (!(d.lo < v && v < d.hi)) return false;
    }
    return true;
}

bool in_omega(const LienardSystem& sys, std::span<const double> x) {
    for (int i = 0; i < sys.n; ++i) {
        const auto& d = sys.omega_box[static_cast<std::size_t>(i)];
        const double v = x[static_cast<std::size_t>(i)];
        if (!(d.lo <= v && v <= d.hi)) return false;
    }
    return true;
}

void vector_field_flat(const LienardSystem& sys, const double* z, double* dz) {
    const auto n = static_cast<std::size_t>(sys.n);
    const EvalContext ctx{{z, n}, {z + n, n}};
    for (std::size_t i = 0; i < n; ++i) {
        dz[i] = z[n + i];
        dz[n + i] = -sys.g[i].eval(ctx) - z[n + i] * sys.f[i].eval(ctx);
    }
}

State vector_field(const LienardSystem& sys, const State& z) {
    if (z.n() != sys.n) throw DomainError("vector_field: state dimension mismatch");
    check_finite(z);
    if (!in_xdomain(sys, z.x) || !in_omega(sys, z.x))
        throw DomainError("vector_field: state outside the system domain");
    std::vector<double> flat(2 * static_cast<std::size_t>(sys.n)), dflat(flat.size());
    z.to_flat(flat);
    vector_field_flat(sys, flat.data(), dflat.data());
    return State::from_flat(dflat);
}

Perturbation make_cosine_perturbation(int n, double T, std::span<const double> amplitudes,
                                      std::span<const double> phases) {
    if (n < 1) throw DomainError("perturbation: dimension must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("perturbation: period must be positive");
    if (amplitudes.size() != static_cast<std::size_t>(n))
        throw DomainError("perturbation: need one amplitude per component");
    if (!phases.empty() && phases.size() != static_cast<std::size_t>(n))
        throw DomainError("perturbation: phases must be empty or one per component");

    const double omega = 2.0 * std::numbers::pi / T;
    Perturbation pert;
    pert.T = T;
    pert.h.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double c = amplitudes[static_cast<std::size_t>(i)];
        const double phi = phases.empty() ? 0.0 : phases[static_cast<std::size_t>(i)];
        Expression angle = Expression::constant(omega) * Expression::variable(VarKind::Time) +
                           Expression::constant(phi);
        pert.h.push_back(Expression::variable(VarKind::Eps) * Expression::constant(c) * cos(angle));
    }
    return pert;
}

void validate_perturbation(const LienardSystem& sys, const Perturbation& pert) {
    if (pert.h.size() != static_cast<std::size_t>(sys.n))
        throw DomainError("perturbation: component count does not match the system dimension");
    if (!(pert.T > 0.0)) throw DomainError("perturbation: period must be positive");
    for (std::size_t i = 0; i < pert.h.size(); ++i) {
        for (const VarRef& v : pert.h[i].variables()) {
            if ((v.kind == VarKind::X || v.kind == VarKind::Y) && v.index >= sys.n)
                throw DomainError("perturbation: h" + std::to_string(i + 1) + " references '" +
                                  var_name(v.kind, v.index) + "' beyond dimension " +
                                  std::to_string(sys.n));
        }
    }
}

void perturbed_vector_field_flat(const LienardSystem& sys, const Perturbation& pert, double eps,
                                 double t, const double* z, double* dz) {
    const auto n = static_cast<std::size_t>(sys.n);
    const EvalContext ctx{{z, n}, {z + n, n}, t, eps, true, true};
    for (std::size_t i = 0; i < n; ++i) {
        dz[i] = z[n + i];
        dz[n + i] = -sys.g[i].eval(ctx) - z[n + i] * sys.f[i].eval(ctx) + pert.h[i].eval(ctx);
    }
}

State perturbed_vector_field(const LienardSystem& sys, const Perturbation& pert, double eps,
                             double t, const State& z) {
    if (z.n() != sys.n) throw DomainError("perturbed_vector_field: state dimension mismatch");
    validate_perturbation(sys, pert);
    check_finite(z);
    if (!in_xdomain(sys, z.x) || !in_omega(sys, z.x))
        throw DomainError("perturbed_vector_field: state outside the system domain");
    std::vector<double> flat(2 * static_cast<std::size_t>(sys.n)), dflat(flat.size());
    z.to_flat(flat);
    perturbed_vector_field_flat(sys, pert, eps, t, flat.data(), dflat.data());
    return State::from_flat(dflat);
}

const char* to_string(LinearizationFlag flag) {
    switch (flag) {
        case LinearizationFlag::clear: return "clear";
        case LinearizationFlag::degenerate: return "degenerate";
        case LinearizationFlag::inconclusive: return "inconclusive";
    }
    return "?";
}

Linearization linearization_eigenvalues(const LienardSystem& sys) {
    const auto n = static_cast<std::size_t>(sys.n);
    const std::vector<double> origin(n, 0.0), yzero(n, 0.0);
    const EvalContext at_origin{origin, yzero};

    Linearization lin;
    lin.f_at_origin.resize(n);
    lin.g_prime_at_zero.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        lin.f_at_origin[i] = sys.f[i].eval(at_origin);
        try {
            lin.g_prime_at_zero[i] =
                sys.g[i].differentiate(VarKind::X, static_cast<int>(i)).eval(at_origin);
        } catch (const NonPolynomialError&) {
            // central difference at 0 for non-polynomial restoring terms
            const double delta = 1e-6;
            std::vector<double> xp(origin), xm(origin);
            xp[i] = delta;
            xm[i] = -delta;
            lin.g_prime_at_zero[i] =
                (sys.g[i].eval(EvalContext{xp, yzero}) - sys.g[i].eval(EvalContext{xm, yzero})) /
                (2.0 * delta);
            lin.finite_difference_g = true;
        }
    }

    bool degenerate = false, inconclusive = false;
    std::string why;
    for (std::size_t i = 0; i < n; ++i) {
        const double fi = lin.f_at_origin[i];
        const double gp = lin.g_prime_at_zero[i];
        const double disc = fi * fi - 4.0 * gp;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            lin.eigenvalues.emplace_back((-fi + s) / 2.0, 0.0);
            lin.eigenvalues.emplace_back((-fi - s) / 2.0, 0.0);
        } else {
            const double s = std::sqrt(-disc);
            lin.eigenvalues.emplace_back(-fi / 2.0, s / 2.0);
            lin.eigenvalues.emplace_back(-fi / 2.0, -s / 2.0);
        }
        if (std::fabs(gp) <= kZeroTol && !degenerate) {
            degenerate = true;
            why = "g" + std::to_string(i + 1) + "'(0) = 0 makes the linearization degenerate";
        }
        if (std::fabs(fi) <= kZeroTol && gp > kZeroTol && !inconclusive) {
            inconclusive = true;
            if (why.empty())
                why = "f" + std::to_string(i + 1) +
                      " vanishes at the origin with g" + std::to_string(i + 1) +
                      "'(0) > 0: a pure-imaginary pair, linearization is inconclusive";
        }
    }

    if (degenerate) {
        lin.flag = LinearizationFlag::degenerate;
    } else if (inconclusive) {
        lin.flag = LinearizationFlag::inconclusive;
    } else {
        lin.flag = LinearizationFlag::clear;
        bool stable = true;
        for (const auto& ev : lin.eigenvalues) stable = stable && ev.real() < 0.0;
        why = stable ? "all eigenvalue real parts are negative"
                     : "some eigenvalue has a nonnegative real part";
    }
    lin.note = why;
    if (lin.finite_difference_g)
        lin.note += "; g'(0) estimated by central differences for a non-polynomial g";
    return lin;
}

}  // namespace lienard
