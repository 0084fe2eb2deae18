// Acceptance battery: each criterion below restates one gate the toolkit
// must clear, prints exactly one PASS/FAIL line, and carries its tolerances
// in code. Run all criteria with no arguments or a single one with
// `--criterion N`. Exit status 0 means every criterion that ran passed.

#include "lienard/analysis.hpp"
#include "lienard/errors.hpp"
#include "lienard/expr.hpp"
#include "lienard/hypotheses.hpp"
#include "lienard/integrate.hpp"
#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"
#include "lienard/periodic.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lienard;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, const char* spec = "%.3g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

class Timer {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
};

int cli(const std::string& args) {
    const std::string cmd = std::string(LIENARD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path("acc_out") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

double hausdorff(const std::vector<std::vector<double>>& A,
                 const std::vector<std::vector<double>>& B) {
    auto one_way = [](const std::vector<std::vector<double>>& from,
                      const std::vector<std::vector<double>>& to) {
        double worst = 0.0;
        for (const auto& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& b : to) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
                best = std::min(best, std::sqrt(d2));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (A.empty() || B.empty()) return std::numeric_limits<double>::infinity();
    return std::max(one_way(A, B), one_way(B, A));
}

std::vector<std::vector<double>> root_points(const RootFinding& rf) {
    std::vector<std::vector<double>> out;
    out.reserve(rf.roots.size());
    for (const auto& r : rf.roots) out.push_back(r.x);
    return out;
}

/// Shared kernel of criteria 1 and 2: solve the three listed subset
/// constraint sets and compare against the frozen references.
Outcome intersection_sets(const std::string& system,
                          const std::vector<std::pair<unsigned, std::vector<std::vector<double>>>>&
                              cases) {
    const auto sys = builtin(system);
    double worst_h = 0.0, worst_secs = 0.0;
    for (const auto& [mask, ref] : cases) {
        const Timer timer;
        const RootFinding rf = solve_constraint_set(sys, mask, sys.omega_box);
        const double secs = timer.seconds();
        worst_secs = std::max(worst_secs, secs);
        if (secs >= 10.0)
            return {false, system + " mask " + std::to_string(mask) + " took " + fmt(secs) +
                               " s (limit 10 s)"};
        if (rf.budget_exhausted)
            return {false, system + " mask " + std::to_string(mask) + " exhausted its budget"};
        for (const auto& r : rf.roots)
            if (r.verdict != IsolationVerdict::isolated)
                return {false, system + " mask " + std::to_string(mask) + " root not isolated (" +
                                   to_string(r.verdict) + ")"};
        const double h = hausdorff(root_points(rf), ref);
        worst_h = std::max(worst_h, h);
        if (!(h < 1e-6))
            return {false, system + " mask " + std::to_string(mask) + " Hausdorff distance " +
                               fmt(h) + " (limit 1e-6)"};
    }
    return {true, system + ": all listed subsets match their references (worst Hausdorff " +
                      fmt(worst_h) + ", worst solve " + fmt(worst_secs) + " s)"};
}

Outcome criterion1() {
    return intersection_sets(
        "squares", {{0u, {{0, 0}, {0, -1}, {1, 1}, {-1, 0}, {-1, -1}}},
                    {2u, {{0, 0}, {-1, 0}}},
                    {1u, {{0, 0}, {0, -1}}}});
}

Outcome criterion2() {
    const double s = 1.0 / std::sqrt(3.0);
    return intersection_sets("ellipses", {{0u, {{s, s}, {s, -s}, {-s, s}, {-s, -s}}},
                                          {2u, {{1, 0}, {-1, 0}}},
                                          {1u, {{0, 1}, {0, -1}}}});
}

Outcome criterion3() {
    const fs::path dir = scratch("c3");
    for (const char* name : {"intro", "squares", "ellipses"}) {
        const int rc = cli("check --system " + std::string(name) + " --out " +
                           (dir / name).string());
        if (rc != 0)
            return {false, std::string("check --system ") + name + " exited " +
                               std::to_string(rc) + " (want 0)"};
    }
    const int rc = cli("check --config " + std::string(FIXTURE_DIR) + "/circle.cfg --out " +
                       (dir / "circle").string());
    if (rc != 1) return {false, "circle fixture exited " + std::to_string(rc) + " (want 1)"};
    if (slurp(dir / "circle" / "check.json").find("suspected_continuum") == std::string::npos)
        return {false, "circle fixture report carries no suspected_continuum verdict"};
    return {true, "intro/squares/ellipses exit 0; circle fixture exits 1 with a "
                  "suspected_continuum witness"};
}

Outcome criterion4() {
    const Timer timer;
    auto half = [](const char* name, double level) {
        const auto sys = builtin(name);
        const LyapunovData ld(sys);
        AttractionOptions opts;
        opts.samples = 100;
        opts.t_max = 500.0;
        opts.convergence_radius = 1e-3;
        opts.rel_tol = 1e-10;
        opts.abs_tol = 1e-10;
        opts.check_hypotheses = false;
        return verify_attraction(sys, ld, level, opts);
    };
    const AttractionReport sq = half("squares", 1.0);
    const AttractionReport el = half("ellipses", 0.25);
    const double secs = timer.seconds();

    double worst_increase = 0.0, worst_norm_sq = 0.0;
    for (const auto& s : sq.per_sample) {
        worst_increase = std::max(worst_increase, s.worst_v_increase);
        worst_norm_sq = std::max(worst_norm_sq, s.terminal_norm);
    }
    for (const auto& s : el.per_sample) worst_increase = std::max(worst_increase, s.worst_v_increase);

    std::string detail = "squares " + std::to_string(sq.converged_count) + "/100, ellipses " +
                         std::to_string(el.converged_count) +
                         "/100 reached |z| < 1e-3 by t = 500; worst V increase " +
                         fmt(worst_increase) + "; " + fmt(secs) + " s";
    if (worst_increase > 1e-8) return {false, detail + " (V monotonicity violated)"};
    if (secs >= 60.0) return {false, detail + " (runtime limit 60 s)"};
    if (sq.converged_count != 100 || el.converged_count != 100)
        return {false, detail + "; squares decay is algebraic (damping vanishes quadratically "
                                "at the origin), worst terminal |z| = " +
                           fmt(worst_norm_sq)};
    return {true, detail};
}

Outcome criterion5() {
    const auto sys = builtin("oscillator");
    IntegrateOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-10;
    opts.convergence_radius = 0.0;
    const Trajectory traj = integrate(sys, State{{1.0, 0.0}, {0.0, 0.0}}, 0.0, 100.0, opts);
    if (traj.termination != Termination::reached_t_end)
        return {false, "integration stopped early: " + to_string(traj.termination)};
    double worst = 0.0;
    for (const double v : traj.V) worst = std::max(worst, std::abs(v - traj.V.front()));
    if (!(worst < 1e-7))
        return {false, "max |V(t) - V(0)| = " + fmt(worst) + " over [0, 100] (limit 1e-7)"};
    return {true, "max |V(t) - V(0)| = " + fmt(worst) + " across " +
                      std::to_string(traj.t.size()) + " stamps (limit 1e-7)"};
}

Outcome criterion6() {
    const auto sys = builtin("squares");
    const LyapunovData ld(sys);
    const auto n = static_cast<std::size_t>(sys.n);

    // Analytic V-dot against the chain rule at random states.
    std::mt19937_64 rng(20260816ull);
    std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(-2.0, 2.0);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> z(2 * n);
        for (std::size_t i = 0; i < n; ++i) z[i] = ux(rng);
        for (std::size_t i = 0; i < n; ++i) z[n + i] = uy(rng);

        const double analytic = ld.Vdot_flat(z.data());
        std::vector<double> dz(2 * n);
        vector_field_flat(sys, z.data(), dz.data());
        const std::vector<double> xs(z.begin(), z.begin() + static_cast<long>(n));
        const std::vector<double> ys(z.begin() + static_cast<long>(n), z.end());
        const EvalContext ctx{xs, ys};
        double chain = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            chain += sys.g[i].eval(ctx) * dz[i];    // ∂V/∂x_i = g_i(x_i)
            chain += z[n + i] * dz[n + i];          // ∂V/∂y_i = y_i
        }
        const double scale = std::max({1.0, std::abs(analytic), std::abs(chain)});
        worst_rel = std::max(worst_rel, std::abs(analytic - chain) / scale);
    }
    if (!(worst_rel < 1e-10))
        return {false, "analytic vs chain-rule V-dot relative error " + fmt(worst_rel) +
                           " (limit 1e-10)"};

    // Central difference of V along a trajectory with dense output.
    IntegrateOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.convergence_radius = 0.0;
    const Trajectory traj = integrate(sys, ld, State{{0.5, 0.5}, {0.0, 0.0}}, 0.0, 10.0, opts);
    const double h = 1e-3;
    double worst_cd = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double t = 0.1 * k;
        std::vector<double> zc(2 * n), zp(2 * n), zm(2 * n);
        traj.sample(t).to_flat(zc);
        traj.sample(t + h).to_flat(zp);
        traj.sample(t - h).to_flat(zm);
        const double cd = (ld.V_flat(zp.data()) - ld.V_flat(zm.data())) / (2.0 * h);
        const double an = ld.Vdot_flat(zc.data());
        worst_cd = std::max(worst_cd, std::abs(cd - an) / std::max(1.0, std::abs(an)));
    }
    if (!(worst_cd < 1e-4))
        return {false, "central-difference dV/dt error " + fmt(worst_cd) + " (limit 1e-4)"};
    return {true, "chain-rule agreement " + fmt(worst_rel) + " over 1000 states; "
                  "central-difference agreement " + fmt(worst_cd) + " along a trajectory"};
}

Outcome criterion7() {
    double slowest = 0.0;
    int probed = 0;
    for (const char* name : {"squares", "ellipses"}) {
        const auto sys = builtin(name);
        const LyapunovData ld(sys);
        struct Pick {
            Stratum stratum;
            unsigned mask;
        };
        for (const Pick pick : {Pick{Stratum::case_a, 0u}, Pick{Stratum::case_b, 1u},
                                Pick{Stratum::case_b, 2u}, Pick{Stratum::case_c, 0u}}) {
            SeedOptions sopts;
            sopts.count = 20;
            const SeedReport seeds = seed_WO_points(sys, pick.stratum, pick.mask, sopts);
            if (seeds.points.size() < 20)
                return {false, std::string(name) + " " + to_string(pick.stratum) + " mask " +
                                   std::to_string(pick.mask) + " seeded only " +
                                   std::to_string(seeds.points.size()) + "/20 points (" +
                                   seeds.note + ")"};
            NonInvarianceOptions nopts;
            nopts.horizon = 1.0;
            nopts.threshold = 1e-10;
            for (const auto& p : seeds.points) {
                const NonInvarianceReport probe = non_invariance_probe(sys, ld, p, nopts);
                ++probed;
                if (!probe.left || probe.leave_time > 1.0)
                    return {false, std::string(name) + " " + to_string(pick.stratum) +
                                       " point never showed V-dot < -1e-10 within t = 1 (" +
                                       probe.note + ")"};
                slowest = std::max(slowest, probe.leave_time);
            }
        }
    }
    return {true, std::to_string(probed) +
                      " probes across both systems and all strata left the vanishing set, "
                      "slowest by t = " +
                      fmt(slowest)};
}

Outcome criterion8() {
    const auto sys = builtin("cubic");
    const Linearization lin = linearization_eigenvalues(sys);
    if (lin.flag != LinearizationFlag::degenerate)
        return {false, std::string("cubic linearization flag is ") + to_string(lin.flag) +
                           " (want degenerate)"};
    const HypothesisReport rep = check_all(sys);
    if (!rep.pass) return {false, "hypothesis battery failed on cubic: " + rep.note};

    const LyapunovData ld(sys);
    AttractionOptions opts;
    opts.samples = 100;
    opts.t_max = 2000.0;
    opts.convergence_radius = 1e-3;
    opts.check_hypotheses = false;
    const AttractionReport att = verify_attraction(sys, ld, 0.1, opts);
    double worst_norm = 0.0;
    for (const auto& s : att.per_sample) worst_norm = std::max(worst_norm, s.terminal_norm);
    if (att.converged_count != 100)
        return {false, "degenerate flag and check pass, but only " +
                           std::to_string(att.converged_count) +
                           "/100 samples reached |z| < 1e-3 by t = 2000 (worst terminal |z| = " +
                           fmt(worst_norm) + "; cubic restoring plus quadratically vanishing "
                                             "damping gives algebraic decay)"};
    return {true, "degenerate linearization, hypothesis battery passes, and 100/100 samples in "
                  "{V < 0.1} converged by t = 2000"};
}

Outcome criterion9() {
    const Timer timer;
    const auto sys = builtin("squares");
    const std::vector<double> amplitudes{1.0, 0.0};
    const Perturbation pert = make_cosine_perturbation(2, 3.141592653589793, amplitudes);
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    const ContinuationResult res = continuation(sys, pert, eps, State::zero(2));
    const double secs = timer.seconds();

    if (res.aborted || res.orbits.size() != 4)
        return {false, "continuation aborted: " + res.note};
    for (const auto& o : res.orbits) {
        if (!o.converged || !(o.residual < 1e-9))
            return {false, "eps = " + fmt(o.eps) + " failed to converge below 1e-9 (residual " +
                               fmt(o.residual) + ")"};
        for (const double m : o.multiplier_moduli)
            if (!(m < 1.0))
                return {false, "eps = " + fmt(o.eps) + " has a Floquet multiplier modulus " +
                                   fmt(m, "%.6f") + " >= 1"};
    }
    for (std::size_t k = 1; k < res.orbits.size(); ++k)
        if (!(res.orbits[k].amplitude < res.orbits[k - 1].amplitude))
            return {false, "amplitudes do not strictly decrease along the eps list"};

    const PeriodicOrbit& probe = res.orbits[2];  // eps = 0.05
    const double target = 0.05 / 3.0;
    if (!(std::abs(probe.x1_amplitude - target) <= 0.2 * target))
        return {false, "x1 amplitude at eps = 0.05 is " + fmt(probe.x1_amplitude) +
                           ", outside 20% of " + fmt(target)};
    if (secs >= 120.0) return {false, "runtime " + fmt(secs) + " s (limit 120 s)"};
    return {true, "4/4 orbits converged below 1e-9; amplitudes strictly decrease; x1 amplitude "
                  "at eps = 0.05 within 20% of eps/3; all multiplier moduli < 1; " +
                      fmt(secs) + " s"};
}

Outcome criterion10() {
    const fs::path dir = scratch("c10");
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {"check --system ellipses", {"check.json"}},
        {"simulate --system squares --z0 0.4,0.2,0,0 --t1 25",
         {"simulate.json", "simulate.csv", "simulate.svg"}},
        {"roa --system squares --grid-density 21", {"roa.json"}},
        {"eigen --system squares", {"eigen.json"}},
        {"probe --system squares --count 10 --seed 99", {"probe.json"}},
        {"periodic --system squares --eps 0.1,0.05", {"periodic.json"}},
    };
    int files = 0;
    for (const auto& [args, artifacts] : runs) {
        const std::string invocation = args + " --out " + dir.string();
        const int ra = cli(invocation);
        std::vector<std::string> first;
        for (const auto& artifact : artifacts) first.push_back(slurp(dir / artifact));
        const int rb = cli(invocation);
        if (ra != rb)
            return {false, "'" + args + "' exited " + std::to_string(ra) + " then " +
                               std::to_string(rb)};
        for (std::size_t k = 0; k < artifacts.size(); ++k) {
            const std::string second = slurp(dir / artifacts[k]);
            if (first[k].empty() || first[k] != second)
                return {false, "'" + args + "' did not reproduce " + artifacts[k] +
                                   " byte for byte"};
            ++files;
        }
    }
    return {true, "all six subcommands reproduced " + std::to_string(files) +
                      " machine-readable artifacts byte for byte"};
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--criterion" && k + 1 < argc) {
            selected = std::atoi(argv[++k]);
            if (selected < 1 || selected > 10) {
                std::fprintf(stderr, "criterion must be 1..10\n");
                return 2;
            }
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }

    const std::vector<std::function<Outcome()>> criteria{
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10};

    bool all_pass = true;
    for (int k = 1; k <= 10; ++k) {
        if (selected != 0 && selected != k) continue;
        Outcome outcome;
        try {
            outcome = criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected error: ") + e.what()};
        }
        std::printf("CRITERION %d: %s — %s\n", k, outcome.pass ? "PASS" : "FAIL",
                    outcome.detail.c_str());
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
