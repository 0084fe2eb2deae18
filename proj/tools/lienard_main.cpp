#include "lienard/analysis.hpp"
#include "lienard/errors.hpp"
#include "lienard/hypotheses.hpp"
#include "lienard/integrate.hpp"
#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"
#include "lienard/periodic.hpp"
#include "lienard/plot.hpp"
#include "lienard/report.hpp"
#include "lienard/runconfig.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lienard;

namespace {

// Exit-code contract, also printed in --help. 64 covers configuration and
// usage mistakes across every subcommand; the analysis codes are disjoint so
// CI can gate on exactly the claim it cares about.
constexpr int kPass = 0;
constexpr int kCheckFail = 1;          // definite hypothesis counterexample
constexpr int kCheckInconclusive = 2;  // budget or probe could not decide
constexpr int kSimulateFailed = 3;     // integration stopped early
constexpr int kRoaUncertified = 4;
constexpr int kEigenError = 5;
constexpr int kProbeFailed = 6;  // a seeded point never left the vanishing set
constexpr int kPeriodicFailed = 7;
constexpr int kBadConfig = 64;

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
}

/// --out handling for the report-only subcommands: a path ending in .json is
/// used verbatim, anything else is a directory receiving <command>.json.
fs::path json_target(const std::string& out, const std::string& command) {
    fs::path p = out.empty() ? fs::path{"."} : fs::path{out};
    if (p.extension() == ".json") {
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        return p;
    }
    fs::create_directories(p);
    return p / (command + ".json");
}

struct SimulateTargets {
    fs::path csv, svg, json;
};

/// simulate writes three siblings. A path ending in .csv names the CSV and
/// places the portrait and report next to it; anything else is a directory.
SimulateTargets simulate_targets(const std::string& out) {
    fs::path p = out.empty() ? fs::path{"."} : fs::path{out};
    if (p.extension() == ".csv") {
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        SimulateTargets t{p, p, p};
        t.svg.replace_extension(".svg");
        t.json.replace_extension(".json");
        return t;
    }
    fs::create_directories(p);
    return {p / "simulate.csv", p / "simulate.svg", p / "simulate.json"};
}

Stratum stratum_from(const std::string& name) {
    if (name == "case_a") return Stratum::case_a;
    if (name == "case_b") return Stratum::case_b;
    if (name == "case_c") return Stratum::case_c;
    throw ConfigError("unknown stratum '" + name + "' (case_a, case_b, or case_c)");
}

int run_check(const LienardSystem& sys, const RunConfig& cfg) {
    CheckAllOptions opts;
    opts.h1_density = cfg.h1_density;
    opts.h2_density = cfg.h2_density;
    opts.solve.root_tol = cfg.root_tol;
    opts.solve.cluster_radius = cfg.cluster_radius;
    opts.solve.seed_cell = cfg.seed_cell;
    opts.solve.max_depth = cfg.max_depth;
    opts.solve.max_cells = cfg.max_cells;
    opts.solve.max_roots = cfg.max_roots;
    opts.solve.shuffle_seed = cfg.shuffle_seed;
    opts.solve.probe.radii = cfg.probe_radii;
    opts.solve.probe.clearance_theta = cfg.clearance_theta;
    opts.solve.probe.root_tol = cfg.root_tol;
    opts.solve.probe.starts = cfg.probe_starts;

    const HypothesisReport rep = check_all(sys, opts);
    const fs::path target = json_target(cfg.out_dir, "check");
    write_text(target, check_report_json(rep, sys));
    std::cout << check_summary(rep, sys) << "\n" << "report: " << target.string() << "\n";

    if (rep.pass) return kPass;
    bool definite = !rep.h1.pass || !rep.h2.pass;
    for (const auto& set : rep.sets)
        for (const auto& root : set.roots)
            if (root.verdict == IsolationVerdict::suspected_continuum) definite = true;
    return definite ? kCheckFail : kCheckInconclusive;
}

int run_simulate(const LienardSystem& sys, const RunConfig& cfg) {
    PlotOptions popts;
    popts.axis_h = axis_flat_index(cfg.axis_h, sys.n);
    popts.axis_v = axis_flat_index(cfg.axis_v, sys.n);

    State z0 = State::zero(sys.n);
    if (!cfg.z0.empty()) {
        if (cfg.z0.size() != 2 * static_cast<std::size_t>(sys.n))
            throw ConfigError("z0 needs 2n entries (positions, then velocities)");
        z0 = State::from_flat(cfg.z0);
    }
    IntegrateOptions iopts;
    iopts.rel_tol = cfg.rel_tol;
    iopts.abs_tol = cfg.abs_tol;
    iopts.convergence_radius = cfg.convergence_radius;

    const LyapunovData ld(sys);
    const Trajectory traj = integrate(sys, ld, z0, cfg.t0, cfg.t1, iopts);

    const SimulateTargets t = simulate_targets(cfg.out_dir);
    write_csv(traj, t.csv.string());
    write_svg(traj, sys, t.svg.string(), popts);
    write_text(t.json, simulate_report_json(traj, sys, t.csv.string(), t.svg.string()));
    std::cout << simulate_summary(traj) << "\n"
              << "csv: " << t.csv.string() << "\n"
              << "portrait: " << t.svg.string() << "\n"
              << "report: " << t.json.string() << "\n";

    const bool ok = traj.termination == Termination::reached_t_end ||
                    traj.termination == Termination::converged_to_origin;
    return ok ? kPass : kSimulateFailed;
}

int run_roa(const LienardSystem& sys, const RunConfig& cfg) {
    RoaOptions opts;
    opts.grid_density = cfg.roa_grid_density;
    opts.max_candidates = cfg.roa_max_candidates;
    opts.vdot_tol = cfg.roa_vdot_tol;

    // Search box: positions span xdomain ∩ omega; velocities mirror their axis.
    std::vector<Interval> box;
    for (int i = 0; i < sys.n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        box.push_back({std::max(sys.xdomain[k].lo, sys.omega_box[k].lo),
                       std::min(sys.xdomain[k].hi, sys.omega_box[k].hi)});
    }
    for (int i = 0; i < sys.n; ++i) box.push_back(box[static_cast<std::size_t>(i)]);

    const LyapunovData ld(sys);
    const RoaReport rep = estimate_roa_level(ld, box, opts);
    const fs::path target = json_target(cfg.out_dir, "roa");
    write_text(target, roa_report_json(rep, sys));
    std::cout << roa_summary(rep) << "\n" << "report: " << target.string() << "\n";
    return rep.certified ? kPass : kRoaUncertified;
}

int run_eigen(const LienardSystem& sys, const RunConfig& cfg) {
    const Linearization lin = linearization_eigenvalues(sys);
    const fs::path target = json_target(cfg.out_dir, "eigen");
    write_text(target, eigen_report_json(lin, sys));
    std::cout << eigen_summary(lin) << "\n" << "report: " << target.string() << "\n";
    return kPass;
}

int run_probe(const LienardSystem& sys, const RunConfig& cfg) {
    SeedOptions sopts;
    sopts.count = cfg.probe_count;
    sopts.seed = cfg.seed;
    const SeedReport seeds = seed_WO_points(sys, stratum_from(cfg.stratum), cfg.mask, sopts);

    NonInvarianceOptions nopts;
    nopts.horizon = cfg.horizon;
    nopts.threshold = cfg.threshold;
    const LyapunovData ld(sys);
    std::vector<NonInvarianceReport> probes;
    probes.reserve(seeds.points.size());
    for (const auto& p : seeds.points) probes.push_back(non_invariance_probe(sys, ld, p, nopts));

    const fs::path target = json_target(cfg.out_dir, "probe");
    write_text(target, probe_report_json(seeds, probes, sys));
    std::cout << probe_summary(seeds, probes) << "\n" << "report: " << target.string() << "\n";

    bool ok = !probes.empty();
    for (const auto& p : probes) ok = ok && p.left;
    return ok ? kPass : kProbeFailed;
}

int run_periodic(const LienardSystem& sys, const RunConfig& cfg) {
    if (cfg.eps_list.empty())
        throw ConfigError("periodic: no forcing strengths; pass --eps or set [periodic] eps_list");
    const Perturbation pert = config_perturbation(cfg, sys.n);

    ShootOptions sopts;
    sopts.newton_tol = cfg.newton_tol;
    sopts.fd_step = cfg.fd_step;
    sopts.rel_tol = cfg.periodic_rel_tol;
    sopts.abs_tol = cfg.periodic_abs_tol;
    sopts.dense_samples = cfg.dense_samples;
    const ContinuationResult res = continuation(sys, pert, cfg.eps_list, State::zero(sys.n), sopts);

    const fs::path target = json_target(cfg.out_dir, "periodic");
    write_text(target, periodic_report_json(res, pert, sys));
    std::cout << periodic_summary(res) << "\n" << "report: " << target.string() << "\n";
    return (!res.aborted && res.trend_pass) ? kPass : kPeriodicFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled Lienard systems: stability hypotheses, simulation, and periodic orbits"};
    app.require_subcommand(1);
    app.footer(
        "exit codes: 0 pass | 1 hypothesis counterexample | 2 check inconclusive |\n"
        "            3 integration stopped early | 4 level not certified | 5 eigen error |\n"
        "            6 a probe stayed on the vanishing set | 7 continuation failed |\n"
        "            64 bad configuration or usage");

    std::string config_path, system_name, out, stratum;
    std::vector<double> z0, eps, amplitudes, phases;
    std::vector<std::string> axes;
    double t0 = 0, t1 = 0, rel_tol = 0, abs_tol = 0, horizon = 0, period = 0;
    int count = 0, grid_density = 0, max_candidates = 0, h1_density = 0, h2_density = 0;
    unsigned mask = 0;
    unsigned long long seed = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file");
        sub->add_option("--system", system_name, "builtin system name")
            ->check(CLI::IsMember(builtin_names()));
        sub->add_option("--out", out, "output file or directory (default: current directory)");
    };

    auto* c_check = app.add_subcommand("check", "machine-check the asymptotic-stability hypotheses");
    add_common(c_check);
    auto* o_h1 = c_check->add_option("--h1-density", h1_density,
                                     "restoring sign check: samples per half-axis");
    auto* o_h2 = c_check->add_option("--h2-density", h2_density,
                                     "damping sign check: grid points per axis");

    auto* c_sim = app.add_subcommand("simulate", "integrate and draw a phase portrait");
    add_common(c_sim);
    auto* o_z0 = c_sim->add_option("--z0", z0, "initial state x1..xn,y1..yn")->delimiter(',');
    auto* o_t0 = c_sim->add_option("--t0", t0, "start time");
    auto* o_t1 = c_sim->add_option("--t1", t1, "end time");
    auto* o_rel = c_sim->add_option("--rel-tol", rel_tol, "integrator relative tolerance");
    auto* o_abs = c_sim->add_option("--abs-tol", abs_tol, "integrator absolute tolerance");
    auto* o_axes =
        c_sim->add_option("--axes", axes, "portrait coordinate pair, e.g. x1,y1")->delimiter(',');

    auto* c_roa = app.add_subcommand("roa", "certify a sublevel set of V as an attraction estimate");
    add_common(c_roa);
    auto* o_grid = c_roa->add_option("--grid-density", grid_density, "grid points per axis");
    auto* o_cand = c_roa->add_option("--max-candidates", max_candidates, "candidate levels to try");

    auto* c_eigen = app.add_subcommand("eigen", "linearization eigenvalues at the origin");
    add_common(c_eigen);

    auto* c_probe =
        app.add_subcommand("probe", "show seeded points leaving the vanishing set of V-dot");
    add_common(c_probe);
    auto* o_stratum = c_probe->add_option("--stratum", stratum, "case_a | case_b | case_c")
                          ->check(CLI::IsMember({"case_a", "case_b", "case_c"}));
    auto* o_mask = c_probe->add_option("--mask", mask, "case_b: velocity subset bitmask");
    auto* o_count = c_probe->add_option("--count", count, "points to seed");
    auto* o_horizon = c_probe->add_option("--horizon", horizon, "integration horizon per probe");
    auto* o_seed = c_probe->add_option("--seed", seed, "sampling seed");

    auto* c_per = app.add_subcommand("periodic", "periodic orbits of the forced system by shooting");
    add_common(c_per);
    auto* o_eps = c_per->add_option("--eps", eps, "strictly decreasing forcing strengths")
                      ->delimiter(',');
    auto* o_period = c_per->add_option("--period", period, "forcing period T");
    auto* o_amp =
        c_per->add_option("--amplitudes", amplitudes, "cosine amplitude per axis")->delimiter(',');
    auto* o_phases =
        c_per->add_option("--phases", phases, "cosine phase per axis")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadConfig;
    }

    // Defaults, then the config file, then explicit flags — last writer wins.
    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!system_name.empty()) {
            cfg.name = system_name;
            cfg.n = 0;
            cfg.f.clear();
            cfg.g.clear();
            cfg.xdomain.clear();
            cfg.omega.clear();
        }
        if (!out.empty()) cfg.out_dir = out;
        if (*o_h1) cfg.h1_density = h1_density;
        if (*o_h2) cfg.h2_density = h2_density;
        if (*o_z0) cfg.z0 = z0;
        if (*o_t0) cfg.t0 = t0;
        if (*o_t1) cfg.t1 = t1;
        if (*o_rel) cfg.rel_tol = rel_tol;
        if (*o_abs) cfg.abs_tol = abs_tol;
        if (*o_axes) {
            if (axes.size() != 2) throw ConfigError("--axes needs exactly two names, e.g. x1,y1");
            cfg.axis_h = axes[0];
            cfg.axis_v = axes[1];
        }
        if (*o_grid) cfg.roa_grid_density = grid_density;
        if (*o_cand) cfg.roa_max_candidates = max_candidates;
        if (*o_stratum) cfg.stratum = stratum;
        if (*o_mask) cfg.mask = mask;
        if (*o_count) cfg.probe_count = count;
        if (*o_horizon) cfg.horizon = horizon;
        if (*o_seed) cfg.seed = seed;
        if (*o_eps) cfg.eps_list = eps;
        if (*o_period) cfg.period = period;
        if (*o_amp) cfg.amplitudes = amplitudes;
        if (*o_phases) cfg.phases = phases;

        const LienardSystem sys = config_system(cfg);

        try {
            if (app.got_subcommand(c_check)) return run_check(sys, cfg);
            if (app.got_subcommand(c_sim)) return run_simulate(sys, cfg);
            if (app.got_subcommand(c_roa)) return run_roa(sys, cfg);
            if (app.got_subcommand(c_eigen)) return run_eigen(sys, cfg);
            if (app.got_subcommand(c_probe)) return run_probe(sys, cfg);
            if (app.got_subcommand(c_per)) return run_periodic(sys, cfg);
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kBadConfig;
        } catch (const ParseError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kBadConfig;
        } catch (const DomainError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kBadConfig;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            if (app.got_subcommand(c_sim)) return kSimulateFailed;
            if (app.got_subcommand(c_roa)) return kRoaUncertified;
            if (app.got_subcommand(c_eigen)) return kEigenError;
            if (app.got_subcommand(c_probe)) return kProbeFailed;
            if (app.got_subcommand(c_per)) return kPeriodicFailed;
            return kCheckInconclusive;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadConfig;
    }
    return kBadConfig;  // unreachable: a subcommand is required
}
