#include "lienard/analysis.hpp"

#include "lienard/errors.hpp"
#include "lienard/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lienard {

namespace {

/// V̇ = −Σ y_i² f_i(X), straight from the damping terms.
double vdot_of(const LienardSystem& sys, const State& z) {
    const EvalContext ctx{z.x, z.y};
    double s = 0.0;
    for (std::size_t i = 0; i < z.x.size(); ++i)
        s += z.y[i] * z.y[i] * sys.f[i].eval(ctx);
    return -s;
}

double draw_velocity(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_int_distribution<int> sign(0, 1);
    return (sign(rng) ? 1.0 : -1.0) * mag(rng);
}

/// Solve f_j(X) = 0 for j outside `mask` in the unknowns x_j (j outside
/// mask), holding x_i (i in mask) fixed: a square Levenberg–Marquardt
/// problem with finite-difference Jacobians. Returns the final max
/// residual; x is updated in place.
double solve_damping_zeros(const LienardSystem& sys, unsigned mask, std::vector<double>& x) {
    std::vector<int> unknowns, eqs;
    for (int j = 0; j < sys.n; ++j) {
        if ((mask >> j) & 1u) continue;
        unknowns.push_back(j);
        eqs.push_back(j);
    }
    const std::size_t d = unknowns.size();
    const std::vector<double> ys(static_cast<std::size_t>(sys.n), 0.0);

    auto residuals = [&](std::vector<double>& F) {
        const EvalContext ctx{x, ys};
        for (std::size_t e = 0; e < d; ++e)
            F[e] = sys.f[static_cast<std::size_t>(eqs[e])].eval(ctx);
    };

    std::vector<double> F(d), Ft(d), Fp(d), Fm(d);
    std::vector<double> J(d * d);
    residuals(F);
    double f2 = 0.0;
    for (double v : F) f2 += v * v;

    double lambda = 1e-3;
    for (int it = 0; it < 200 && f2 >= 1e-28; ++it) {
        for (std::size_t k = 0; k < d; ++k) {
            const auto ax = static_cast<std::size_t>(unknowns[k]);
            const double save = x[ax];
            const double h = 1e-7 * std::max(1.0, std::fabs(save));
            x[ax] = save + h;
            residuals(Fp);
            x[ax] = save - h;
            residuals(Fm);
            x[ax] = save;
            for (std::size_t e = 0; e < d; ++e) J[e * d + k] = (Fp[e] - Fm[e]) / (2.0 * h);
        }
        // Normal equations with damping, solved by Gaussian elimination on
        // the (tiny) d×d system.
        std::vector<double> A(d * d, 0.0), rhs(d, 0.0), delta(d, 0.0);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t e = 0; e < d; ++e) A[a * d + b] += J[e * d + a] * J[e * d + b];
            A[a * d + a] += lambda;
            for (std::size_t e = 0; e < d; ++e) rhs[a] -= J[e * d + a] * F[e];
        }
        bool singular = false;
        for (std::size_t col = 0; col < d && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < d; ++r)
                if (std::fabs(A[r * d + col]) > std::fabs(A[piv * d + col])) piv = r;
            if (std::fabs(A[piv * d + col]) < 1e-300) {
                singular = true;
                break;
            }
            if (piv != col)
                for (std::size_t c = 0; c < d; ++c) std::swap(A[piv * d + c], A[col * d + c]);
            std::swap(rhs[piv], rhs[col]);
            for (std::size_t r = col + 1; r < d; ++r) {
                const double m = A[r * d + col] / A[col * d + col];
                for (std::size_t c = col; c < d; ++c) A[r * d + c] -= m * A[col * d + c];
                rhs[r] -= m * rhs[col];
            }
        }
        if (singular) {
            lambda = std::min(lambda * 10.0, 1e10);
            continue;
        }
        for (std::size_t r = d; r-- > 0;) {
            double s = rhs[r];
            for (std::size_t c = r + 1; c < d; ++c) s -= A[r * d + c] * delta[c];
            delta[r] = s / A[r * d + r];
        }

        std::vector<double> trial = x;
        for (std::size_t k = 0; k < d; ++k)
            trial[static_cast<std::size_t>(unknowns[k])] += delta[k];
        std::swap(x, trial);
        residuals(Ft);
        double ft2 = 0.0;
        for (double v : Ft) ft2 += v * v;
        if (ft2 < f2) {
            F = Ft;
            f2 = ft2;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            std::swap(x, trial);  // revert
            lambda = std::min(lambda * 10.0, 1e10);
        }
    }
    double m = 0.0;
    for (double v : F) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace

std::string to_string(Stratum s) {
    switch (s) {
        case Stratum::case_a: return "case_a";
        case Stratum::case_b: return "case_b";
        case Stratum::case_c: return "case_c";
    }
    return "unknown";
}

SeedReport seed_WO_points(const LienardSystem& sys, Stratum stratum, unsigned mask,
                          const SeedOptions& opts) {
    const auto n = static_cast<std::size_t>(sys.n);
    const unsigned full = (1u << sys.n) - 1u;
    if (stratum == Stratum::case_b && (mask == 0u || mask >= full))
        throw DomainError("seed_WO_points: case_b needs a nonempty proper velocity subset");
    if (opts.count < 0) throw ConfigError("seed_WO_points: negative count");

    SeedReport rep;
    rep.stratum = stratum;
    rep.mask = stratum == Stratum::case_b ? mask : (stratum == Stratum::case_a ? full : 0u);

    std::mt19937_64 rng(opts.seed);
    std::vector<std::uniform_real_distribution<double>> xdist;
    for (std::size_t i = 0; i < n; ++i)
        xdist.emplace_back(sys.omega_box[i].lo, sys.omega_box[i].hi);

    // case_c: the X-locus is the common zero set of every f_i, already
    // located (and polished to the machine floor) by the root finder.
    std::vector<std::vector<double>> c_roots;
    if (stratum == Stratum::case_c) {
        const auto rf = solve_constraint_set(sys, 0u, sys.omega_box);
        for (const auto& r : rf.roots)
            if (r.residual < opts.constraint_tol) c_roots.push_back(r.x);
        if (c_roots.empty()) {
            rep.note = "no common zeros of the damping terms inside the box; stratum is empty";
            return rep;
        }
    }

    int attempts_left = opts.max_attempts * std::max(1, opts.count);
    while (static_cast<int>(rep.points.size()) < opts.count && attempts_left-- > 0) {
        WOPoint p;
        p.stratum = stratum;
        p.mask = rep.mask;
        p.z = State::zero(sys.n);

        switch (stratum) {
            case Stratum::case_a: {
                bool big_enough = false;
                for (std::size_t i = 0; i < n; ++i) {
                    p.z.x[i] = xdist[i](rng);
                    if (std::fabs(p.z.x[i]) >= opts.x_min) big_enough = true;
                }
                if (!big_enough) continue;
                break;
            }
            case Stratum::case_b: {
                for (std::size_t i = 0; i < n; ++i) p.z.x[i] = xdist[i](rng);
                const double res = solve_damping_zeros(sys, mask, p.z.x);
                if (res > opts.constraint_tol) continue;
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (p.z.x[i] < sys.omega_box[i].lo || p.z.x[i] > sys.omega_box[i].hi)
                        inside = false;
                if (!inside) continue;
                for (std::size_t i = 0; i < n; ++i)
                    if (!((mask >> i) & 1u)) p.z.y[i] = draw_velocity(rng, opts.y_min, opts.y_max);
                break;
            }
            case Stratum::case_c: {
                std::uniform_int_distribution<std::size_t> pick(0, c_roots.size() - 1);
                p.z.x = c_roots[pick(rng)];
                for (std::size_t i = 0; i < n; ++i)
                    p.z.y[i] = draw_velocity(rng, opts.y_min, opts.y_max);
                break;
            }
        }

        if (p.z.norm() == 0.0) continue;  // never seed the origin itself
        p.vdot = vdot_of(sys, p.z);
        if (std::fabs(p.vdot) >= 1e-10) continue;
        rep.points.push_back(std::move(p));
    }

    if (static_cast<int>(rep.points.size()) < opts.count) {
        rep.note = "only " + std::to_string(rep.points.size()) + " of " +
                   std::to_string(opts.count) + " requested points could be placed on the stratum";
    }
    return rep;
}

// ---------------------------------------------------------------------------

NonInvarianceReport non_invariance_probe(const LienardSystem& sys, const LyapunovData& ld,
                                         const WOPoint& p, const NonInvarianceOptions& opts) {
    if (p.z.norm() == 0.0)
        throw DomainError("non_invariance_probe: the origin never leaves the vanishing set");
    if (opts.horizon <= 0.0) throw ConfigError("non_invariance_probe: horizon must be positive");

    NonInvarianceReport rep;
    rep.point = p;

    IntegrateOptions io;
    io.rel_tol = opts.rel_tol;
    io.abs_tol = opts.abs_tol;
    io.convergence_radius = 0.0;  // ride out the full horizon
    rep.trajectory = integrate(sys, ld, p.z, 0.0, opts.horizon, io);
    const Trajectory& traj = rep.trajectory;

    std::size_t hit = traj.t.size();
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        if (traj.Vdot[k] < -opts.threshold) {
            hit = k;
            break;
        }
    }
    if (hit == traj.t.size()) {
        rep.note = "V-dot never fell below -threshold within the horizon";
        if (traj.termination != Termination::reached_t_end)
            rep.note += " (integration ended early: " + to_string(traj.termination) + ")";
        return rep;
    }

    rep.left = true;
    if (hit == 0) {
        rep.leave_time = traj.t.front();
        rep.vdot_at_leave = traj.Vdot.front();
        return rep;
    }

    // Bisect inside the bracketing step for the first crossing, using the
    // integrator's dense output.
    double lo = traj.t[hit - 1], hi = traj.t[hit];
    for (int it = 0; it < 80 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (vdot_of(sys, traj.sample(mid)) < -opts.threshold)
            hi = mid;
        else
            lo = mid;
    }
    rep.leave_time = hi;
    rep.vdot_at_leave = vdot_of(sys, traj.sample(hi));
    return rep;
}

NonInvarianceReport non_invariance_probe(const LienardSystem& sys, const WOPoint& p,
                                         const NonInvarianceOptions& opts) {
    return non_invariance_probe(sys, LyapunovData(sys), p, opts);
}

// ---------------------------------------------------------------------------

AttractionReport verify_attraction(const LienardSystem& sys, const LyapunovData& ld,
                                   double c_level, const AttractionOptions& opts) {
    if (!(c_level > 0.0)) throw ConfigError("verify_attraction: level must be positive");
    if (opts.samples <= 0) throw ConfigError("verify_attraction: need at least one sample");

    AttractionReport rep;
    rep.c_level = c_level;
    rep.convergence_radius = opts.convergence_radius;
    rep.t_max = opts.t_max;

    if (opts.check_hypotheses) {
        rep.hypotheses_checked = true;
        rep.hypotheses_pass = check_all(sys).pass;
        if (!rep.hypotheses_pass)
            rep.note = "hypothesis battery fails: attraction evidence is empirical only";
    }

    // Per-axis bounds of {V < c}: scan G outward for the position axes, use
    // the exact kinetic bound for the velocities.
    const auto n = static_cast<std::size_t>(sys.n);
    std::vector<Interval> box(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval dom = sys.xdomain[i];
        const Interval om = sys.omega_box[i];
        const Interval clip{std::max(dom.lo, om.lo), std::min(dom.hi, om.hi)};
        constexpr int kScan = 256;
        double hi = clip.hi;
        for (int k = 1; k <= kScan; ++k) {
            const double xx = clip.hi * k / kScan;
            if (ld.G(static_cast<int>(i), xx) > c_level) {
                hi = xx;
                break;
            }
        }
        double lo = clip.lo;
        for (int k = 1; k <= kScan; ++k) {
            const double xx = clip.lo * k / kScan;
            if (ld.G(static_cast<int>(i), xx) > c_level) {
                lo = xx;
                break;
            }
        }
        box[i] = {lo, hi};
    }
    const double ybound = std::sqrt(2.0 * c_level);
    for (std::size_t i = 0; i < n; ++i) box[n + i] = {-ybound, ybound};

    const ComponentGrid comp = sublevel_component(ld, box, c_level, opts.grid_density);

    std::mt19937_64 rng(opts.seed);
    std::vector<std::uniform_real_distribution<double>> dist;
    for (const auto& iv : box) dist.emplace_back(iv.lo, iv.hi);

    IntegrateOptions io;
    io.rel_tol = opts.rel_tol;
    io.abs_tol = opts.abs_tol;
    io.convergence_radius = opts.convergence_radius;
    io.record_dense = false;

    long rejections_left = 20'000L * opts.samples;
    while (static_cast<int>(rep.per_sample.size()) < opts.samples) {
        std::vector<double> z0(2 * n);
        for (std::size_t k = 0; k < 2 * n; ++k) z0[k] = dist[k](rng);
        if (!comp.contains(z0) || !(ld.V_flat(z0.data()) < c_level)) {
            if (--rejections_left <= 0) {
                rep.note += (rep.note.empty() ? "" : "; ");
                rep.note += "rejection sampling exhausted: the sublevel component is too small "
                            "for the requested sample count";
                break;
            }
            continue;
        }

        const Trajectory traj = integrate(sys, ld, State::from_flat(z0), 0.0, opts.t_max, io);
        AttractionSample s;
        s.z0 = z0;
        s.time = traj.t_end();
        s.converged = traj.termination == Termination::converged_to_origin;
        s.terminal_norm = traj.final_state().norm();
        s.terminal_v = traj.V.back();
        for (std::size_t k = 1; k < traj.V.size(); ++k)
            s.worst_v_increase = std::max(s.worst_v_increase, traj.V[k] - traj.V[k - 1]);
        if (s.converged) ++rep.converged_count;
        rep.per_sample.push_back(std::move(s));
    }
    rep.samples = static_cast<int>(rep.per_sample.size());

    double slowest = -1.0;
    for (std::size_t k = 0; k < rep.per_sample.size(); ++k) {
        if (rep.per_sample[k].converged && rep.per_sample[k].time > slowest) {
            slowest = rep.per_sample[k].time;
            rep.slowest_index = static_cast<int>(k);
        }
    }
    return rep;
}

AttractionReport verify_attraction(const LienardSystem& sys, double c_level,
                                   const AttractionOptions& opts) {
    return verify_attraction(sys, LyapunovData(sys), c_level, opts);
}

}  // namespace lienard
