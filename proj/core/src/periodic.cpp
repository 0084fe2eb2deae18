#include "lienard/periodic.hpp"

#include "lienard/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace lienard {

namespace {

IntegrateOptions map_options(double rel, double abs) {
    IntegrateOptions io;
    io.rel_tol = rel;
    io.abs_tol = abs;
    io.convergence_radius = 0.0;  // must land exactly on t = T, never stop early
    io.record_dense = false;
    return io;
}

std::vector<double> flat_of(const State& z) {
    std::vector<double> out(2 * static_cast<std::size_t>(z.n()));
    z.to_flat(out);
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

State run_map(const LienardSystem& sys, const Perturbation& pert, double eps, const State& z0,
              const IntegrateOptions& io) {
    const Trajectory traj = integrate_perturbed(sys, pert, eps, z0, 0.0, pert.T, io);
    if (traj.termination != Termination::reached_t_end)
        throw Error("period_map: integration stopped before one period (" +
                    to_string(traj.termination) + ")");
    return traj.final_state();
}

}  // namespace

State period_map(const LienardSystem& sys, const Perturbation& pert, double eps, const State& z0,
                 const PeriodMapOptions& opts) {
    return run_map(sys, pert, eps, z0, map_options(opts.rel_tol, opts.abs_tol));
}

PeriodicOrbit shoot(const LienardSystem& sys, const Perturbation& pert, double eps,
                    const State& guess, const ShootOptions& opts) {
    validate_perturbation(sys, pert);
    if (opts.dense_samples < 200)
        throw ConfigError("shoot: at least 200 orbit samples per period are required");

    const auto n2 = 2 * static_cast<std::size_t>(sys.n);
    const IntegrateOptions io = map_options(opts.rel_tol, opts.abs_tol);

    PeriodicOrbit orbit;
    orbit.eps = eps;
    orbit.T = pert.T;
    orbit.z_star = guess;

    auto map_flat = [&](const std::vector<double>& z) {
        return flat_of(run_map(sys, pert, eps, State::from_flat(z), io));
    };

    // Finite-difference monodromy at z: column k is (P(z + h e_k) − Pz)/h.
    auto monodromy = [&](const std::vector<double>& z, const std::vector<double>& Pz) {
        Eigen::MatrixXd M(n2, n2);
        std::vector<double> zk = z;
        for (std::size_t k = 0; k < n2; ++k) {
            const double h = opts.fd_step;
            zk[k] = z[k] + h;
            const auto Pk = map_flat(zk);
            zk[k] = z[k];
            for (std::size_t r = 0; r < n2; ++r)
                M(static_cast<long>(r), static_cast<long>(k)) = (Pk[r] - Pz[r]) / h;
        }
        return M;
    };

    std::vector<double> z = flat_of(guess);
    std::vector<double> Pz;
    try {
        Pz = map_flat(z);
    } catch (const Error& e) {
        orbit.note = std::string("the guess cannot be integrated over one period: ") + e.what();
        return orbit;
    }
    double fnorm = max_abs_diff(Pz, z);

    while (fnorm >= opts.newton_tol && orbit.newton_iterations < opts.max_iterations) {
        ++orbit.newton_iterations;
        const Eigen::MatrixXd M = monodromy(z, Pz);
        Eigen::MatrixXd J = M;
        for (std::size_t k = 0; k < n2; ++k) J(static_cast<long>(k), static_cast<long>(k)) -= 1.0;

        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) {
            orbit.jacobian_singular = true;
            orbit.note = "shooting matrix is singular: a Floquet multiplier sits near 1";
            break;
        }
        Eigen::VectorXd F(n2);
        for (std::size_t k = 0; k < n2; ++k) F(static_cast<long>(k)) = Pz[k] - z[k];
        const Eigen::VectorXd delta = lu.solve(-F);

        double lambda = 1.0;
        bool improved = false;
        for (int trial = 0; trial < opts.damped_trials; ++trial, lambda *= 0.5) {
            std::vector<double> znew(n2);
            for (std::size_t k = 0; k < n2; ++k)
                znew[k] = z[k] + lambda * delta(static_cast<long>(k));
            std::vector<double> Pnew;
            try {
                Pnew = map_flat(znew);
            } catch (const Error&) {
                continue;  // stepped out of the integrable region; shorten
            }
            const double fnew = max_abs_diff(Pnew, znew);
            if (fnew < fnorm) {
                z.swap(znew);
                Pz.swap(Pnew);
                fnorm = fnew;
                improved = true;
                break;
            }
        }
        if (!improved) {
            orbit.note = "damped Newton made no progress over " +
                         std::to_string(opts.damped_trials) + " step-halving trials";
            break;
        }
    }

    orbit.z_star = State::from_flat(z);
    if (fnorm < opts.newton_tol) {
        // Guard against tolerance-matched artifacts: re-measure at a tighter
        // integration tolerance before declaring success.
        const IntegrateOptions tight = map_options(opts.verify_rel_tol, opts.verify_rel_tol);
        try {
            const auto Pz_tight = flat_of(run_map(sys, pert, eps, orbit.z_star, tight));
            double r2 = 0.0;
            for (std::size_t k = 0; k < n2; ++k) {
                const double d = Pz_tight[k] - z[k];
                r2 += d * d;
            }
            orbit.residual = std::sqrt(r2);
            orbit.converged = orbit.residual < 1e-9;
            if (!orbit.converged)
                orbit.note = "residual failed re-verification at the tighter tolerance";
        } catch (const Error& e) {
            orbit.note = std::string("re-verification integration failed: ") + e.what();
        }
    } else if (orbit.note.empty()) {
        orbit.note = "Newton did not reach the residual tolerance in " +
                     std::to_string(opts.max_iterations) + " iterations";
    }

    // Floquet multipliers from the monodromy at the final point.
    try {
        const Eigen::MatrixXd M = monodromy(z, Pz);
        const Eigen::EigenSolver<Eigen::MatrixXd> es(M);
        for (long k = 0; k < es.eigenvalues().size(); ++k)
            orbit.multipliers.push_back(es.eigenvalues()(k));
        std::sort(orbit.multipliers.begin(), orbit.multipliers.end(),
                  [](const std::complex<double>& a, const std::complex<double>& b) {
                      const double ma = std::abs(a), mb = std::abs(b);
                      if (ma != mb) return ma > mb;
                      if (a.real() != b.real()) return a.real() > b.real();
                      return a.imag() > b.imag();
                  });
        for (const auto& m : orbit.multipliers) orbit.multiplier_moduli.push_back(std::abs(m));
    } catch (const Error&) {
        // The final iterate sits too close to the domain edge for the
        // difference columns; leave the multipliers empty.
    }

    // Densely sampled orbit over one period.
    try {
        IntegrateOptions dio = map_options(opts.rel_tol, opts.abs_tol);
        dio.record_dense = true;
        const Trajectory traj = integrate_perturbed(sys, pert, eps, orbit.z_star, 0.0, pert.T, dio);
        for (int k = 0; k <= opts.dense_samples; ++k) {
            const double t = pert.T * static_cast<double>(k) / opts.dense_samples;
            const State zs = traj.sample(t);
            double norm2 = 0.0;
            std::vector<double> flat = flat_of(zs);
            for (double v : flat) norm2 += v * v;
            orbit.amplitude = std::max(orbit.amplitude, std::sqrt(norm2));
            orbit.x1_amplitude = std::max(orbit.x1_amplitude, std::fabs(zs.x[0]));
            orbit.sample_times.push_back(t);
            orbit.samples.push_back(std::move(flat));
        }
    } catch (const Error&) {
        orbit.sample_times.clear();
        orbit.samples.clear();
    }
    return orbit;
}

ContinuationResult continuation(const LienardSystem& sys, const Perturbation& pert,
                                std::span<const double> eps_list, const State& guess,
                                const ShootOptions& opts) {
    if (eps_list.empty()) throw ConfigError("continuation: empty epsilon list");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (eps_list[k] < 0.0) throw ConfigError("continuation: epsilon must be nonnegative");
        if (k > 0 && eps_list[k] >= eps_list[k - 1])
            throw ConfigError("continuation: epsilon list must be strictly decreasing");
        if (eps_list[k] == 0.0 && k + 1 != eps_list.size())
            throw ConfigError("continuation: epsilon 0 may only terminate the list");
    }

    ContinuationResult res;
    State start = guess;
    for (double eps : eps_list) {
        // ε = 0 is the unperturbed equation: the null solution is exact, so
        // shoot from the origin itself rather than the warm start.
        const State& g = eps == 0.0 ? State::zero(sys.n) : start;
        PeriodicOrbit orbit = shoot(sys, pert, eps, g, opts);
        const bool ok = orbit.converged;
        start = orbit.z_star;
        res.orbits.push_back(std::move(orbit));
        if (!ok) {
            res.aborted = true;
            res.note = "shooting failed at eps = " + std::to_string(eps) +
                       "; remaining continuation steps skipped";
            break;
        }
    }

    std::vector<const PeriodicOrbit*> positive;
    for (const auto& o : res.orbits)
        if (o.eps > 0.0 && o.converged) positive.push_back(&o);

    if (res.aborted) {
        res.trend_pass = false;
    } else if (positive.size() < 2) {
        res.trend_pass = true;
        res.note = "insufficient points for trend";
    } else {
        bool decreasing = true;
        double lo_ratio = 1e300, hi_ratio = 0.0;
        for (std::size_t k = 0; k < positive.size(); ++k) {
            if (k > 0 && !(positive[k]->amplitude < positive[k - 1]->amplitude))
                decreasing = false;
            const double ratio = positive[k]->amplitude / positive[k]->eps;
            lo_ratio = std::min(lo_ratio, ratio);
            hi_ratio = std::max(hi_ratio, ratio);
        }
        res.trend_pass = decreasing && hi_ratio <= 2.0 * lo_ratio;
        if (!decreasing)
            res.note = "amplitudes do not decrease with epsilon";
        else if (!res.trend_pass)
            res.note = "amplitude/epsilon drifts outside the factor-2 band";
    }
    return res;
}

void write_csv(const PeriodicOrbit& orbit, std::ostream& out) {
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
        out << buf;
    };
    out << "# periodic orbit: eps=";
    std::snprintf(buf, sizeof buf, "%.17g", orbit.eps);
    out << buf << "  T=";
    std::snprintf(buf, sizeof buf, "%.17g", orbit.T);
    out << buf << "  residual=";
    std::snprintf(buf, sizeof buf, "%.3g", orbit.residual);
    out << buf << "\n";

    const int n = orbit.z_star.n();
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",x" << i;
    for (int i = 1; i <= n; ++i) out << ",y" << i;
    out << ",norm\n";
    for (std::size_t k = 0; k < orbit.samples.size(); ++k) {
        put(orbit.sample_times[k], ',');
        double norm2 = 0.0;
        for (double v : orbit.samples[k]) norm2 += v * v;
        for (double v : orbit.samples[k]) put(v, ',');
        put(std::sqrt(norm2), '\n');
    }
}

void write_csv(const PeriodicOrbit& orbit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_csv(orbit, out);
}

}  // namespace lienard
