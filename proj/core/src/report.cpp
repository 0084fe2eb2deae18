#include "lienard/report.hpp"

#include "lienard/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lienard {

namespace {

using json = nlohmann::ordered_json;

json interval_list(const std::vector<Interval>& box) {
    json out = json::array();
    for (const auto& iv : box) out.push_back(json::array({iv.lo, iv.hi}));
    return out;
}

json system_block(const LienardSystem& sys) {
    json f = json::array(), g = json::array();
    for (const auto& e : sys.f) f.push_back(e.str());
    for (const auto& e : sys.g) g.push_back(e.str());
    return json{{"name", sys.name},
                {"n", sys.n},
                {"f", std::move(f)},
                {"g", std::move(g)},
                {"xdomain", interval_list(sys.xdomain)},
                {"omega", interval_list(sys.omega_box)},
                {"warnings", sys.warnings}};
}

json schema_block(const char* name) { return json{{"name", name}, {"version", 1}}; }

constexpr const char* kDeterminism =
    "identical configuration and seed reproduce this document byte for byte";
constexpr const char* kCertification =
    "claims are sampling statements over the declared boxes at the reported resolution, "
    "not interval proofs";
constexpr const char* kEpsScaling =
    "the forcing is scaled by eps, so eps = 0 recovers the unperturbed system exactly";

json complex_list(const std::vector<std::complex<double>>& zs) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string check_report_json(const HypothesisReport& rep, const LienardSystem& sys) {
    json doc;
    doc["schema"] = schema_block("check");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}, {"certification", kCertification}};
    doc["pass"] = rep.pass;
    doc["note"] = rep.note;

    json h1{{"pass", rep.h1.pass}, {"density", rep.h1.density}, {"samples", rep.h1.samples}};
    if (rep.h1.witness_axis >= 0)
        h1["witness"] = {{"axis", rep.h1.witness_axis},
                         {"x", rep.h1.witness_x},
                         {"value", rep.h1.witness_value}};
    else
        h1["witness"] = nullptr;
    doc["h1"] = std::move(h1);

    json h2{{"pass", rep.h2.pass}, {"density", rep.h2.density}, {"samples", rep.h2.samples}};
    if (rep.h2.witness_axis >= 0)
        h2["witness"] = {{"axis", rep.h2.witness_axis},
                         {"point", rep.h2.witness_point},
                         {"value", rep.h2.witness_value}};
    else
        h2["witness"] = nullptr;
    doc["h2"] = std::move(h2);

    json sets = json::array();
    for (const auto& rf : rep.sets) {
        json roots = json::array();
        for (const auto& r : rf.roots)
            roots.push_back(json{{"x", r.x},
                                 {"residual", r.residual},
                                 {"verdict", to_string(r.verdict)},
                                 {"probe_min_residuals", r.probe_min_residuals}});
        sets.push_back(json{{"mask", rf.mask},
                            {"equations", rf.equations},
                            {"box", interval_list(rf.box)},
                            {"budget_exhausted", rf.budget_exhausted},
                            {"cells_visited", rf.cells_visited},
                            {"note", rf.note},
                            {"roots", std::move(roots)}});
    }
    doc["constraint_sets"] = std::move(sets);
    return doc.dump(2) + "\n";
}

std::string simulate_report_json(const Trajectory& traj, const LienardSystem& sys,
                                 const std::string& csv_path, const std::string& svg_path) {
    json doc;
    doc["schema"] = schema_block("simulate");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}};
    doc["termination"] = to_string(traj.termination);
    doc["t_start"] = traj.t.front();
    doc["t_end"] = traj.t_end();
    doc["final_state"] = traj.z.back();
    double norm2 = 0.0;
    for (double v : traj.z.back()) norm2 += v * v;
    doc["final_norm"] = std::sqrt(norm2);
    doc["v_initial"] = traj.V.front();
    doc["v_final"] = traj.V.back();
    doc["stamps"] = traj.t.size();
    doc["accepted"] = traj.accepted;
    doc["rejected"] = traj.rejected;
    doc["field_evals"] = traj.field_evals;
    doc["rel_tol"] = traj.rel_tol;
    doc["abs_tol"] = traj.abs_tol;
    doc["outputs"] = {{"csv", csv_path.empty() ? json(nullptr) : json(csv_path)},
                      {"svg", svg_path.empty() ? json(nullptr) : json(svg_path)}};
    return doc.dump(2) + "\n";
}

std::string roa_report_json(const RoaReport& rep, const LienardSystem& sys) {
    json doc;
    doc["schema"] = schema_block("roa");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}, {"certification", kCertification}};
    doc["certified"] = rep.certified;
    doc["level"] = rep.level;
    doc["boundary_min"] = rep.boundary_min;
    doc["grid_density"] = rep.grid_density;
    doc["resolution"] = rep.resolution;
    doc["worst_vdot"] = rep.worst_vdot;
    std::vector<double> worst(2 * static_cast<std::size_t>(rep.worst_vdot_point.n()));
    if (rep.worst_vdot_point.n() > 0) rep.worst_vdot_point.to_flat(worst);
    doc["worst_vdot_point"] = worst;
    doc["component_points"] = rep.component_points;
    doc["candidates_tried"] = rep.candidates_tried;
    doc["note"] = rep.note;
    return doc.dump(2) + "\n";
}

std::string eigen_report_json(const Linearization& lin, const LienardSystem& sys) {
    json doc;
    doc["schema"] = schema_block("eigen");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}};
    doc["flag"] = to_string(lin.flag);
    doc["eigenvalues"] = complex_list(lin.eigenvalues);
    doc["f_at_origin"] = lin.f_at_origin;
    doc["g_prime_at_zero"] = lin.g_prime_at_zero;
    doc["finite_difference_g"] = lin.finite_difference_g;
    doc["note"] = lin.note;
    return doc.dump(2) + "\n";
}

std::string probe_report_json(const SeedReport& seeds,
                              const std::vector<NonInvarianceReport>& probes,
                              const LienardSystem& sys) {
    if (seeds.points.size() != probes.size())
        throw ConfigError("probe report: seed and probe counts differ");
    json doc;
    doc["schema"] = schema_block("probe");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}};
    doc["stratum"] = to_string(seeds.stratum);
    doc["mask"] = seeds.mask;
    doc["count"] = seeds.points.size();
    doc["seed_note"] = seeds.note;

    bool all_left = !probes.empty();
    double max_leave = 0.0;
    json rows = json::array();
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& p = probes[k];
        std::vector<double> flat(2 * static_cast<std::size_t>(seeds.points[k].z.n()));
        seeds.points[k].z.to_flat(flat);
        rows.push_back(json{{"z0", flat},
                            {"vdot_at_start", seeds.points[k].vdot},
                            {"left", p.left},
                            {"leave_time", p.leave_time},
                            {"vdot_at_leave", p.vdot_at_leave},
                            {"note", p.note}});
        all_left = all_left && p.left;
        if (p.left) max_leave = std::max(max_leave, p.leave_time);
    }
    doc["probes"] = std::move(rows);
    doc["all_left"] = all_left;
    doc["max_leave_time"] = max_leave;
    return doc.dump(2) + "\n";
}

std::string periodic_report_json(const ContinuationResult& res, const Perturbation& pert,
                                 const LienardSystem& sys) {
    json doc;
    doc["schema"] = schema_block("periodic");
    doc["system"] = system_block(sys);
    doc["conventions"] = {{"determinism", kDeterminism}, {"eps_scaling", kEpsScaling}};
    json h = json::array();
    for (const auto& e : pert.h) h.push_back(e.str());
    doc["perturbation"] = {{"T", pert.T}, {"h", std::move(h)}};
    doc["trend_pass"] = res.trend_pass;
    doc["aborted"] = res.aborted;
    doc["note"] = res.note;

    double largest = 0.0;
    json orbits = json::array();
    for (const auto& o : res.orbits) {
        std::vector<double> flat(2 * static_cast<std::size_t>(o.z_star.n()));
        if (o.z_star.n() > 0) o.z_star.to_flat(flat);
        orbits.push_back(json{{"eps", o.eps},
                              {"converged", o.converged},
                              {"residual", o.residual},
                              {"newton_iterations", o.newton_iterations},
                              {"jacobian_singular", o.jacobian_singular},
                              {"z_star", flat},
                              {"amplitude", o.amplitude},
                              {"x1_amplitude", o.x1_amplitude},
                              {"multipliers", complex_list(o.multipliers)},
                              {"multiplier_moduli", o.multiplier_moduli},
                              {"note", o.note}});
        if (o.converged && o.eps > largest) largest = o.eps;
    }
    doc["orbits"] = std::move(orbits);
    doc["largest_converged_eps"] = largest;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Plain-language summaries
// ---------------------------------------------------------------------------

std::string check_summary(const HypothesisReport& rep, const LienardSystem& sys) {
    std::ostringstream out;
    if (rep.pass) {
        out << "PASS: all four asymptotic-stability hypotheses hold for '" << sys.name
            << "' on the declared boxes. Each restoring term opposes displacement (h1), the "
               "damping terms are nonnegative on the box (h2), and every subset constraint set "
               "meets it only in isolated points (h3/h4), so the LaSalle invariance argument "
               "applies: the origin is asymptotically stable.";
    } else {
        out << "FAIL: the hypothesis battery does not go through for '" << sys.name
            << "': " << rep.note
            << " The LaSalle argument is not available with these checks as configured.";
    }
    return out.str();
}

std::string simulate_summary(const Trajectory& traj) {
    std::ostringstream out;
    double norm2 = 0.0;
    for (double v : traj.z.back()) norm2 += v * v;
    out << "Integrated over [" << fmt(traj.t.front()) << ", " << fmt(traj.t_end())
        << "]; stopped with '" << to_string(traj.termination) << "' after " << traj.accepted
        << " accepted steps. Final |z| = " << fmt(std::sqrt(norm2)) << "; the energy V moved from "
        << fmt(traj.V.front()) << " to " << fmt(traj.V.back()) << ".";
    return out.str();
}

std::string roa_summary(const RoaReport& rep) {
    std::ostringstream out;
    if (rep.certified) {
        out << "Certified (at grid resolution " << fmt(rep.resolution) << "): on the connected "
            << "component of {V < " << fmt(rep.level) << "} around the origin, V decreases along "
            << "solutions (worst sampled V-dot " << fmt(rep.worst_vdot)
            << "), making the sublevel set a Lyapunov-certified attraction estimate.";
    } else {
        out << "Not certified: no candidate level passed the sampling criteria ("
            << (rep.note.empty() ? "see the report record" : rep.note) << ").";
    }
    return out.str();
}

std::string eigen_summary(const Linearization& lin) {
    std::ostringstream out;
    switch (lin.flag) {
        case LinearizationFlag::clear:
            out << "Every linearization eigenvalue has nonzero real part, so the origin's "
                   "local character follows from the eigenvalues alone.";
            break;
        case LinearizationFlag::degenerate:
            out << "Linearization degenerate: some g_i'(0) = 0, so the eigenvalue formula "
                   "cannot settle stability; use check — the Lyapunov/LaSalle route decides.";
            break;
        case LinearizationFlag::inconclusive:
            out << "Linearization inconclusive: a block has a pure-imaginary eigenvalue pair "
                   "(f_i at the origin vanishes with g_i'(0) > 0); use check — the "
                   "Lyapunov/LaSalle route decides.";
            break;
    }
    if (!lin.note.empty()) out << " " << lin.note;
    return out.str();
}

std::string probe_summary(const SeedReport& seeds,
                          const std::vector<NonInvarianceReport>& probes) {
    std::ostringstream out;
    if (probes.empty()) {
        out << "No points to probe: " << (seeds.note.empty() ? "the stratum is empty" : seeds.note)
            << ".";
        return out.str();
    }
    std::size_t left = 0;
    double max_leave = 0.0;
    for (const auto& p : probes)
        if (p.left) {
            ++left;
            max_leave = std::max(max_leave, p.leave_time);
        }
    out << left << " of " << probes.size() << " seeded points on stratum "
        << to_string(seeds.stratum) << " left the vanishing set {V-dot = 0}";
    if (left == probes.size()) {
        out << ", the slowest by t = " << fmt(max_leave)
            << ". No solution stays inside the stratum, which is exactly what the LaSalle "
               "argument needs: the only invariant subset is the origin itself.";
    } else {
        out << " within the horizon. The " << probes.size() - left
            << " stragglers are evidence against the hypotheses or a tolerance artifact — "
               "inspect their attached trajectories.";
    }
    return out.str();
}

std::string periodic_summary(const ContinuationResult& res) {
    std::ostringstream out;
    std::size_t converged = 0;
    double largest = 0.0;
    for (const auto& o : res.orbits)
        if (o.converged) {
            ++converged;
            if (o.eps > largest) largest = o.eps;
        }
    out << converged << " of " << res.orbits.size()
        << " forcing strengths yielded a T-periodic orbit by shooting.";
    if (res.aborted) out << " Continuation aborted: " << res.note;
    if (res.trend_pass) {
        out << " Orbit amplitudes shrink with eps inside a factor-2 band of linearity, the "
               "computable reading of the periodic solutions collapsing onto the null solution "
               "as the forcing vanishes.";
        if (!res.note.empty() && !res.aborted) out << " (" << res.note << ")";
    } else if (!res.aborted) {
        out << " Amplitude trend FAILED: " << res.note;
    }
    if (largest > 0.0)
        out << " Largest eps with a converged orbit: " << fmt(largest)
            << " — an empirical lower bound on the existence threshold.";
    return out.str();
}

}  // namespace lienard
