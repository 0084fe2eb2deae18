#pragma once

#include "lienard/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lienard {

/// One run's worth of knobs, grouped the way the config file sections are.
/// Defaults mirror the module-level option defaults, so an empty file (or no
/// file at all) reproduces library behavior; command-line flags override on
/// top of whatever the file set.
///
/// File format: `[section]` headers, `key = value` lines, `#` comments on
/// their own lines. Values are numbers, comma-separated number lists, or
/// strings; expression strings must be double-quoted. Unknown sections,
/// unknown keys, duplicate keys, and malformed values are errors naming the
/// line. `write_config(parse_config(text))` is canonical and
/// `parse_config(write_config(cfg)) == cfg` holds exactly.
struct RunConfig {
    // [system] — either a builtin name or a full inline definition.
    std::string name;                     // nonempty → builtin(name)
    int n = 0;                            // > 0 → inline definition below
    std::vector<std::string> f;           // damping expression sources
    std::vector<std::string> g;           // restoring expression sources
    std::vector<Interval> xdomain;
    std::vector<Interval> omega;

    // [integrate]
    double t0 = 0.0;
    double t1 = 50.0;
    std::vector<double> z0;               // flat [x…, y…]; empty = origin
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    double convergence_radius = 1e-9;

    // [hypotheses]
    int h1_density = 201;
    int h2_density = 201;
    double root_tol = 1e-9;
    double cluster_radius = 1e-5;
    double seed_cell = 0.05;
    int max_depth = 40;
    long max_cells = 200'000;
    int max_roots = 64;
    unsigned long long shuffle_seed = 0;
    double clearance_theta = 1e-3;
    std::vector<double> probe_radii{0.2, 0.1, 0.05};
    int probe_starts = 32;

    // [roa]
    int roa_grid_density = 31;
    int roa_max_candidates = 60;
    double roa_vdot_tol = 1e-12;

    // [probe]
    std::string stratum = "case_a";       // case_a | case_b | case_c
    unsigned mask = 1;                    // velocity subset for case_b
    int probe_count = 20;
    double horizon = 1.0;
    double threshold = 1e-10;

    // [periodic]
    double period = 3.141592653589793;
    std::vector<double> amplitudes{1.0, 0.0};
    std::vector<double> phases;           // empty = all zero
    std::vector<double> eps_list;         // must be set to run a continuation
    double newton_tol = 1e-10;
    double fd_step = 1e-7;
    double periodic_rel_tol = 1e-11;
    double periodic_abs_tol = 1e-11;
    int dense_samples = 256;

    // [output]
    std::string out_dir = ".";
    unsigned long long seed = 4242;
    std::string axis_h = "x1";            // phase-portrait coordinate pair
    std::string axis_v = "y1";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Strict parse: every diagnostic is a ConfigError naming the 1-based line.
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Canonical emission: every section, fixed key order, full double precision.
[[nodiscard]] std::string write_config(const RunConfig& cfg);
void save_config(const RunConfig& cfg, const std::string& path);

/// Assemble the system the config names or defines inline. Exactly one of
/// the two must be present.
[[nodiscard]] LienardSystem config_system(const RunConfig& cfg);

/// The cosine forcing the [periodic] section describes, sized for n axes.
[[nodiscard]] Perturbation config_perturbation(const RunConfig& cfg, int n);

/// Map "x3"/"y1" to the flat-state index (x_i → i−1, y_i → n+i−1).
/// Throws ConfigError on a malformed name or out-of-range index.
[[nodiscard]] int axis_flat_index(const std::string& axis, int n);

}  // namespace lienard
