#include "lienard/integrate.hpp"

#include "lienard/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

namespace lienard {

namespace {

// ---------------------------------------------------------------------------
// Dormand–Prince 5(4) tableau, error weights, and dense-output weights
// ---------------------------------------------------------------------------

constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacc1 = 5.0;  // hnew/h is kept within [1/kFacc1, 1/kFacc2]
constexpr double kFacc2 = 0.2;
constexpr double kUround = std::numeric_limits<double>::epsilon();

using FieldFn = std::function<void(double t, const double* z, double* dz)>;

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// Starting step size from the local derivative magnitudes (two field
/// evaluations: one at z0 and one explicit Euler probe).
double initial_step(const FieldFn& f, double t0, const std::vector<double>& z0,
                    const std::vector<double>& f0, double posneg, double hmax, double rel_tol,
                    double abs_tol, long& field_evals) {
    const std::size_t m = z0.size();
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sk = abs_tol + rel_tol * std::fabs(z0[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (z0[i] / sk) * (z0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax) * posneg;

    std::vector<double> z1(m), f1(m);
    for (std::size_t i = 0; i < m; ++i) z1[i] = z0[i] + h * f0[i];
    try {
        f(t0 + h, z1.data(), f1.data());
        ++field_evals;
    } catch (const EvalError&) {
        return h;  // probe failed; start from the first-order guess
    }

    double der2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sk = abs_tol + rel_tol * std::fabs(z0[i]);
        der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
    }
    der2 = std::sqrt(der2) / std::fabs(h);

    const double der12 = std::max(der2, std::sqrt(dnf));
    double h1 = (der12 <= 1e-15) ? std::max(1e-6, std::fabs(h) * 1e-3)
                                 : std::pow(0.01 / der12, 0.2);
    if (!std::isfinite(h1) || h1 <= 0.0) h1 = std::fabs(h);
    return std::min({100.0 * std::fabs(h), h1, hmax}) * posneg;
}

struct RunContext {
    const LienardSystem* sys = nullptr;
    const LyapunovData* ld = nullptr;
    FieldFn field;
};

void validate_options(const IntegrateOptions& opts) {
    auto tol_ok = [](double v) { return v >= 1e-13 && v <= 1e-3; };
    if (!tol_ok(opts.rel_tol) || !tol_ok(opts.abs_tol))
        throw ConfigError("integrator tolerances must lie in [1e-13, 1e-3]");
    if (opts.convergence_radius < 0.0)
        throw ConfigError("convergence_radius must be nonnegative");
    if (opts.h_init < 0.0 || opts.h_max < 0.0 || opts.fixed_step < 0.0)
        throw ConfigError("step-size options must be nonnegative");
    if (opts.max_steps <= 0) throw ConfigError("max_steps must be positive");
}

void push_stamp(Trajectory& traj, const RunContext& rc, double t, const std::vector<double>& z) {
    traj.t.push_back(t);
    traj.z.push_back(z);
    traj.V.push_back(rc.ld->V_flat(z.data()));
    traj.Vdot.push_back(rc.ld->Vdot_flat(z.data()));
}

Trajectory run(const RunContext& rc, const State& z0, double t0, double t1,
               const IntegrateOptions& opts) {
    validate_options(opts);
    const LienardSystem& sys = *rc.sys;
    if (z0.n() != sys.n) throw DomainError("integrate: state dimension mismatch");
    const std::size_t m = 2 * static_cast<std::size_t>(sys.n);

    Trajectory traj;
    traj.n = sys.n;
    traj.system_name = sys.name;
    traj.rel_tol = opts.rel_tol;
    traj.abs_tol = opts.abs_tol;

    std::vector<double> z(m);
    z0.to_flat(z);
    push_stamp(traj, rc, t0, z);

    auto norm2 = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    if (opts.convergence_radius > 0.0 && norm2(z) < opts.convergence_radius) {
        traj.termination = Termination::converged_to_origin;
        return traj;
    }
    if (t1 == t0) {
        traj.termination = Termination::reached_t_end;
        return traj;
    }

    const double posneg = (t1 > t0) ? 1.0 : -1.0;
    const double hmax = (opts.h_max > 0.0) ? opts.h_max : std::fabs(t1 - t0);
    const bool fixed = opts.fixed_step > 0.0;

    std::vector<double> k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), znew(m), st(m);

    double t = t0;
    rc.field(t, z.data(), k1.data());
    ++traj.field_evals;
    if (!all_finite(k1)) throw Error("integrate: vector field not finite at the initial state");

    double h;
    if (fixed) {
        h = posneg * std::min(opts.fixed_step, std::fabs(t1 - t0));
    } else if (opts.h_init > 0.0) {
        h = posneg * std::min(opts.h_init, hmax);
    } else {
        h = initial_step(rc.field, t0, z, k1, posneg, hmax, opts.rel_tol, opts.abs_tol,
                         traj.field_evals);
    }

    double facold = 1e-4;
    bool reject = false;
    int inside_streak = 0;
    long steps = 0;

    for (;;) {
        if (++steps > opts.max_steps)
            throw Error("integrate: step budget exhausted (" + std::to_string(opts.max_steps) +
                        " steps) before reaching t1");
        if (0.1 * std::fabs(h) <= std::fabs(t) * kUround) {
            traj.termination = Termination::step_underflow;
            return traj;
        }
        bool last = false;
        if ((t + 1.01 * h - t1) * posneg > 0.0) {
            h = t1 - t;
            last = true;
        }

        // Six derivative stages; k7 is the FSAL evaluation at the new point.
        bool stage_ok = true;
        try {
            for (std::size_t i = 0; i < m; ++i) st[i] = z[i] + h * a21 * k1[i];
            rc.field(t + c2 * h, st.data(), k2.data());
            for (std::size_t i = 0; i < m; ++i) st[i] = z[i] + h * (a31 * k1[i] + a32 * k2[i]);
            rc.field(t + c3 * h, st.data(), k3.data());
            for (std::size_t i = 0; i < m; ++i)
                st[i] = z[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rc.field(t + c4 * h, st.data(), k4.data());
            for (std::size_t i = 0; i < m; ++i)
                st[i] = z[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rc.field(t + c5 * h, st.data(), k5.data());
            for (std::size_t i = 0; i < m; ++i)
                st[i] = z[i] +
                        h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            rc.field(t + h, st.data(), k6.data());
            for (std::size_t i = 0; i < m; ++i)
                znew[i] = z[i] +
                          h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
            rc.field(t + h, znew.data(), k7.data());
            traj.field_evals += 6;
            stage_ok = all_finite(znew) && all_finite(k7);
        } catch (const EvalError&) {
            stage_ok = false;
        }

        double err = std::numeric_limits<double>::infinity();
        if (stage_ok && !fixed) {
            err = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double sk =
                    opts.abs_tol + opts.rel_tol * std::max(std::fabs(z[i]), std::fabs(znew[i]));
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                err += (ei / sk) * (ei / sk);
            }
            err = std::sqrt(err / static_cast<double>(m));
        }

        if (fixed && !stage_ok)
            throw Error("integrate: vector field not finite during a fixed step");

        if (!fixed && err > 1.0) {
            // Rejected: shrink and retry from the same state.
            const double fac11 = std::pow(err, kExpo1);
            h = h / std::min(kFacc1, fac11 / kSafety);
            reject = true;
            ++traj.rejected;
            continue;
        }

        // Accepted.
        ++traj.accepted;
        if (opts.record_dense) {
            DenseStep ds;
            ds.t0 = t;
            ds.h = h;
            ds.r1 = z;
            ds.r2.resize(m);
            ds.r3.resize(m);
            ds.r4.resize(m);
            ds.r5.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                const double ydiff = znew[i] - z[i];
                const double bspl = h * k1[i] - ydiff;
                ds.r2[i] = ydiff;
                ds.r3[i] = bspl;
                ds.r4[i] = ydiff - h * k7[i] - bspl;
                ds.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                                d7 * k7[i]);
            }
            traj.dense.push_back(std::move(ds));
        }

        k1.swap(k7);  // FSAL: the last stage is the first of the next step
        z = znew;
        t = last ? t1 : t + h;
        push_stamp(traj, rc, t, z);

        if (opts.check_domain && !in_xdomain(sys, {z.data(), static_cast<std::size_t>(sys.n)})) {
            traj.termination = Termination::left_domain;
            return traj;
        }
        if (opts.convergence_radius > 0.0) {
            if (norm2(z) < opts.convergence_radius) {
                if (++inside_streak >= 10) {
                    traj.termination = Termination::converged_to_origin;
                    return traj;
                }
            } else {
                inside_streak = 0;
            }
        }
        if (last) {
            traj.termination = Termination::reached_t_end;
            return traj;
        }

        if (fixed) {
            h = posneg * opts.fixed_step;
        } else {
            facold = std::max(err, 1e-4);
            const double fac11 = std::pow(err, kExpo1);
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::max(kFacc2, std::min(kFacc1, fac / kSafety));
            double hnew = h / fac;
            if (std::fabs(hnew) > hmax) hnew = posneg * hmax;
            if (reject) hnew = posneg * std::min(std::fabs(hnew), std::fabs(h));
            reject = false;
            h = hnew;
        }
    }
}

}  // namespace

std::string to_string(Termination term) {
    switch (term) {
        case Termination::reached_t_end: return "reached_t_end";
        case Termination::converged_to_origin: return "converged_to_origin";
        case Termination::left_domain: return "left_domain";
        case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

State Trajectory::sample(double time) const {
    if (t.empty()) throw Error("sample: empty trajectory");
    // Exact stamp hits return the stored state so stamp values round-trip.
    const auto lo = std::lower_bound(t.begin(), t.end(), time,
                                     [&](double a, double b) { return t.front() <= t.back() ? a < b : a > b; });
    if (lo != t.end() && *lo == time) return State::from_flat(z[static_cast<std::size_t>(lo - t.begin())]);
    if (dense.empty())
        throw Error("sample: no interpolation data (record_dense was off)");

    const double tmin = std::min(t.front(), t.back());
    const double tmax = std::max(t.front(), t.back());
    if (time < tmin || time > tmax)
        throw DomainError("sample: time outside the integrated span");

    // Locate the accepted step whose interval covers the requested time.
    const bool fwd = t.back() >= t.front();
    std::size_t klo = 0, khi = dense.size();
    while (khi - klo > 1) {
        const std::size_t mid = (klo + khi) / 2;
        if (fwd ? dense[mid].t0 <= time : dense[mid].t0 >= time)
            klo = mid;
        else
            khi = mid;
    }
    const DenseStep& ds = dense[klo];
    const double theta = (time - ds.t0) / ds.h;
    const double th1 = 1.0 - theta;
    const std::size_t m = ds.r1.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = ds.r1[i] +
                 theta * (ds.r2[i] + th1 * (ds.r3[i] + theta * (ds.r4[i] + th1 * ds.r5[i])));
    return State::from_flat(out);
}

Trajectory integrate(const LienardSystem& sys, const LyapunovData& ld, const State& z0, double t0,
                     double t1, const IntegrateOptions& opts) {
    RunContext rc;
    rc.sys = &sys;
    rc.ld = &ld;
    rc.field = [&sys](double, const double* z, double* dz) { vector_field_flat(sys, z, dz); };
    return run(rc, z0, t0, t1, opts);
}

Trajectory integrate(const LienardSystem& sys, const State& z0, double t0, double t1,
                     const IntegrateOptions& opts) {
    const LyapunovData ld(sys);
    return integrate(sys, ld, z0, t0, t1, opts);
}

Trajectory integrate_perturbed(const LienardSystem& sys, const LyapunovData& ld,
                               const Perturbation& pert, double eps, const State& z0, double t0,
                               double t1, const IntegrateOptions& opts) {
    validate_perturbation(sys, pert);
    RunContext rc;
    rc.sys = &sys;
    rc.ld = &ld;
    rc.field = [&sys, &pert, eps](double t, const double* z, double* dz) {
        perturbed_vector_field_flat(sys, pert, eps, t, z, dz);
    };
    return run(rc, z0, t0, t1, opts);
}

Trajectory integrate_perturbed(const LienardSystem& sys, const Perturbation& pert, double eps,
                               const State& z0, double t0, double t1,
                               const IntegrateOptions& opts) {
    const LyapunovData ld(sys);
    return integrate_perturbed(sys, ld, pert, eps, z0, t0, t1, opts);
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    char buf[40];
    os << "# system: " << traj.system_name;
    std::snprintf(buf, sizeof buf, "%g", traj.rel_tol);
    os << "  rel_tol=" << buf;
    std::snprintf(buf, sizeof buf, "%g", traj.abs_tol);
    os << "  abs_tol=" << buf << "\n";

    os << "t";
    for (int i = 1; i <= traj.n; ++i) os << ",x" << i;
    for (int i = 1; i <= traj.n; ++i) os << ",y" << i;
    os << ",V,Vdot\n";

    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        put(traj.t[k]);
        for (double v : traj.z[k]) {
            os << ",";
            put(v);
        }
        os << ",";
        put(traj.V[k]);
        os << ",";
        put(traj.Vdot[k]);
        os << "\n";
    }
}

void write_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_csv(traj, os);
}

}  // namespace lienard
