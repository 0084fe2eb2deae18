#include "lienard/runconfig.hpp"

#include "lienard/errors.hpp"
#include "lienard/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace lienard {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view v, int line) {
    const std::string s(v);
    if (s.empty()) fail(line, "expected a number, got nothing");
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail(line, "malformed number '" + s + "'");
    return x;
}

long long to_int(std::string_view v, int line) {
    const std::string s(v);
    if (s.empty()) fail(line, "expected an integer, got nothing");
    char* end = nullptr;
    const long long x = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) fail(line, "malformed integer '" + s + "'");
    return x;
}

unsigned long long to_uint(std::string_view v, int line) {
    const std::string s(v);
    if (s.empty() || s.front() == '-') fail(line, "expected a nonnegative integer");
    char* end = nullptr;
    const unsigned long long x = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) fail(line, "malformed integer '" + s + "'");
    return x;
}

std::vector<double> to_list(std::string_view v, int line) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::size_t pos = 0;
    const std::string s(v);
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string_view cell =
            trim(std::string_view(s).substr(pos, comma == std::string::npos ? comma : comma - pos));
        out.push_back(to_double(cell, line));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

Interval to_interval(std::string_view v, int line) {
    const auto xs = to_list(v, line);
    if (xs.size() != 2) fail(line, "expected an interval 'lo, hi'");
    return {xs[0], xs[1]};
}

/// Bare token, or the contents of a double-quoted string.
std::string to_string_value(std::string_view v, int line) {
    if (!v.empty() && v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') fail(line, "unterminated quoted string");
        return std::string(v.substr(1, v.size() - 2));
    }
    if (v.find('"') != std::string_view::npos) fail(line, "stray quote in value");
    return std::string(v);
}

std::string to_quoted(std::string_view v, int line) {
    if (v.empty() || v.front() != '"' || v.back() != '"' || v.size() < 2)
        fail(line, "expressions must be double-quoted");
    return std::string(v.substr(1, v.size() - 2));
}

/// Split "f12" into ("f", 12); index 0 when there is no numeric suffix.
std::pair<std::string, int> split_suffix(const std::string& key) {
    std::size_t k = key.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(key[k - 1]))) --k;
    if (k == key.size()) return {key, 0};
    return {key.substr(0, k), static_cast<int>(std::strtol(key.c_str() + k, nullptr, 10))};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ", ";
        out += fmt(xs[k]);
    }
    return out;
}

template <typename T>
void store_indexed(std::vector<std::pair<int, T>>& slot, int index, T value, int line,
                   const std::string& key) {
    if (index < 1) fail(line, "'" + key + "' needs a 1-based index suffix");
    for (const auto& [i, v] : slot)
        if (i == index) fail(line, "duplicate key '" + key + "'");
    slot.emplace_back(index, std::move(value));
}

template <typename T>
std::vector<T> finalize_indexed(std::vector<std::pair<int, T>>& slot, int n,
                                const std::string& key) {
    std::vector<T> out(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (auto& [i, v] : slot) {
        if (i > n)
            throw ConfigError("config: [system] " + key + std::to_string(i) + " exceeds n = " +
                              std::to_string(n));
        out[static_cast<std::size_t>(i - 1)] = std::move(v);
        seen[static_cast<std::size_t>(i - 1)] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw ConfigError("config: [system] " + key + std::to_string(i + 1) + " is missing");
    return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::vector<std::pair<int, std::string>> fs, gs;
    std::vector<std::pair<int, Interval>> xds, oms;
    int inline_line = 0, name_line = 0;

    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line;

        const std::string_view body = trim(raw);
        if (body.empty() || body.front() == '#') continue;

        if (body.front() == '[') {
            if (body.back() != ']') fail(line, "unterminated section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            static const std::set<std::string> known{"system", "integrate", "hypotheses",
                                                     "roa",    "probe",     "periodic", "output"};
            if (!known.count(section)) fail(line, "unknown section [" + section + "]");
            continue;
        }
        if (section.empty()) fail(line, "key before any [section] header");

        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) fail(line, "expected 'key = value'");
        const std::string key{trim(body.substr(0, eq))};
        const std::string_view val = trim(body.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (!seen.insert(section + "." + key).second) fail(line, "duplicate key '" + key + "'");

        const auto [stem, index] = split_suffix(key);
        bool handled = true;

        if (section == "system") {
            const bool is_inline = key == "n" || stem == "f" || stem == "g" ||
                                   stem == "xdomain" || stem == "omega";
            if (key == "name") {
                cfg.name = to_string_value(val, line);
                name_line = line;
            } else if (key == "n") {
                cfg.n = static_cast<int>(to_int(val, line));
                if (cfg.n < 1) fail(line, "n must be at least 1");
            } else if (stem == "f" && index > 0) {
                store_indexed(fs, index, to_quoted(val, line), line, key);
            } else if (stem == "g" && index > 0) {
                store_indexed(gs, index, to_quoted(val, line), line, key);
            } else if (stem == "xdomain" && index > 0) {
                store_indexed(xds, index, to_interval(val, line), line, key);
            } else if (stem == "omega" && index > 0) {
                store_indexed(oms, index, to_interval(val, line), line, key);
            } else {
                handled = false;
            }
            if (handled && is_inline && inline_line == 0) inline_line = line;
            if (name_line && inline_line)
                fail(std::max(name_line, inline_line),
                     "choose a builtin name or an inline definition, not both");
        } else if (section == "integrate") {
            if (key == "t0") cfg.t0 = to_double(val, line);
            else if (key == "t1") cfg.t1 = to_double(val, line);
            else if (key == "z0") cfg.z0 = to_list(val, line);
            else if (key == "rel_tol") cfg.rel_tol = to_double(val, line);
            else if (key == "abs_tol") cfg.abs_tol = to_double(val, line);
            else if (key == "convergence_radius") cfg.convergence_radius = to_double(val, line);
            else handled = false;
        } else if (section == "hypotheses") {
            if (key == "h1_density") cfg.h1_density = static_cast<int>(to_int(val, line));
            else if (key == "h2_density") cfg.h2_density = static_cast<int>(to_int(val, line));
            else if (key == "root_tol") cfg.root_tol = to_double(val, line);
            else if (key == "cluster_radius") cfg.cluster_radius = to_double(val, line);
            else if (key == "seed_cell") cfg.seed_cell = to_double(val, line);
            else if (key == "max_depth") cfg.max_depth = static_cast<int>(to_int(val, line));
            else if (key == "max_cells") cfg.max_cells = static_cast<long>(to_int(val, line));
            else if (key == "max_roots") cfg.max_roots = static_cast<int>(to_int(val, line));
            else if (key == "shuffle_seed") cfg.shuffle_seed = to_uint(val, line);
            else if (key == "clearance_theta") cfg.clearance_theta = to_double(val, line);
            else if (key == "probe_radii") cfg.probe_radii = to_list(val, line);
            else if (key == "probe_starts") cfg.probe_starts = static_cast<int>(to_int(val, line));
            else handled = false;
        } else if (section == "roa") {
            if (key == "grid_density") cfg.roa_grid_density = static_cast<int>(to_int(val, line));
            else if (key == "max_candidates")
                cfg.roa_max_candidates = static_cast<int>(to_int(val, line));
            else if (key == "vdot_tol") cfg.roa_vdot_tol = to_double(val, line);
            else handled = false;
        } else if (section == "probe") {
            if (key == "stratum") {
                cfg.stratum = to_string_value(val, line);
                if (cfg.stratum != "case_a" && cfg.stratum != "case_b" && cfg.stratum != "case_c")
                    fail(line, "stratum must be case_a, case_b, or case_c");
            } else if (key == "mask") {
                cfg.mask = static_cast<unsigned>(to_uint(val, line));
            } else if (key == "count") {
                cfg.probe_count = static_cast<int>(to_int(val, line));
            } else if (key == "horizon") {
                cfg.horizon = to_double(val, line);
            } else if (key == "threshold") {
                cfg.threshold = to_double(val, line);
            } else {
                handled = false;
            }
        } else if (section == "periodic") {
            if (key == "period") cfg.period = to_double(val, line);
            else if (key == "amplitudes") cfg.amplitudes = to_list(val, line);
            else if (key == "phases") cfg.phases = to_list(val, line);
            else if (key == "eps_list") cfg.eps_list = to_list(val, line);
            else if (key == "newton_tol") cfg.newton_tol = to_double(val, line);
            else if (key == "fd_step") cfg.fd_step = to_double(val, line);
            else if (key == "rel_tol") cfg.periodic_rel_tol = to_double(val, line);
            else if (key == "abs_tol") cfg.periodic_abs_tol = to_double(val, line);
            else if (key == "dense_samples")
                cfg.dense_samples = static_cast<int>(to_int(val, line));
            else handled = false;
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = to_string_value(val, line);
            else if (key == "seed") cfg.seed = to_uint(val, line);
            else if (key == "axes") {
                const std::string pair = to_string_value(val, line);
                const std::size_t comma = pair.find(',');
                if (comma == std::string::npos) fail(line, "axes needs two names, e.g. 'x1, y1'");
                cfg.axis_h = std::string(trim(std::string_view(pair).substr(0, comma)));
                cfg.axis_v = std::string(trim(std::string_view(pair).substr(comma + 1)));
            } else {
                handled = false;
            }
        }

        if (!handled) fail(line, "unknown key '" + key + "' in [" + section + "]");
    }

    if (!fs.empty() || !gs.empty() || !xds.empty() || !oms.empty() || cfg.n > 0) {
        if (cfg.n < 1) throw ConfigError("config: [system] inline definition needs n");
        cfg.f = finalize_indexed(fs, cfg.n, "f");
        cfg.g = finalize_indexed(gs, cfg.n, "g");
        cfg.xdomain = finalize_indexed(xds, cfg.n, "xdomain");
        cfg.omega = finalize_indexed(oms, cfg.n, "omega");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string write_config(const RunConfig& cfg) {
    if (!cfg.name.empty() && cfg.n > 0)
        throw ConfigError("config has both a builtin name and an inline definition");
    std::string out;
    auto kv = [&](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };

    out += "[system]\n";
    if (!cfg.name.empty()) kv("name", cfg.name);
    if (cfg.n > 0) {
        kv("n", std::to_string(cfg.n));
        for (int i = 0; i < cfg.n; ++i)
            kv(("f" + std::to_string(i + 1)).c_str(), "\"" + cfg.f[static_cast<std::size_t>(i)] + "\"");
        for (int i = 0; i < cfg.n; ++i)
            kv(("g" + std::to_string(i + 1)).c_str(), "\"" + cfg.g[static_cast<std::size_t>(i)] + "\"");
        for (int i = 0; i < cfg.n; ++i) {
            const auto& iv = cfg.xdomain[static_cast<std::size_t>(i)];
            kv(("xdomain" + std::to_string(i + 1)).c_str(), fmt(iv.lo) + ", " + fmt(iv.hi));
        }
        for (int i = 0; i < cfg.n; ++i) {
            const auto& iv = cfg.omega[static_cast<std::size_t>(i)];
            kv(("omega" + std::to_string(i + 1)).c_str(), fmt(iv.lo) + ", " + fmt(iv.hi));
        }
    }

    out += "\n[integrate]\n";
    kv("t0", fmt(cfg.t0));
    kv("t1", fmt(cfg.t1));
    if (!cfg.z0.empty()) kv("z0", fmt(cfg.z0));
    kv("rel_tol", fmt(cfg.rel_tol));
    kv("abs_tol", fmt(cfg.abs_tol));
    kv("convergence_radius", fmt(cfg.convergence_radius));

    out += "\n[hypotheses]\n";
    kv("h1_density", std::to_string(cfg.h1_density));
    kv("h2_density", std::to_string(cfg.h2_density));
    kv("root_tol", fmt(cfg.root_tol));
    kv("cluster_radius", fmt(cfg.cluster_radius));
    kv("seed_cell", fmt(cfg.seed_cell));
    kv("max_depth", std::to_string(cfg.max_depth));
    kv("max_cells", std::to_string(cfg.max_cells));
    kv("max_roots", std::to_string(cfg.max_roots));
    kv("shuffle_seed", std::to_string(cfg.shuffle_seed));
    kv("clearance_theta", fmt(cfg.clearance_theta));
    kv("probe_radii", fmt(cfg.probe_radii));
    kv("probe_starts", std::to_string(cfg.probe_starts));

    out += "\n[roa]\n";
    kv("grid_density", std::to_string(cfg.roa_grid_density));
    kv("max_candidates", std::to_string(cfg.roa_max_candidates));
    kv("vdot_tol", fmt(cfg.roa_vdot_tol));

    out += "\n[probe]\n";
    kv("stratum", cfg.stratum);
    kv("mask", std::to_string(cfg.mask));
    kv("count", std::to_string(cfg.probe_count));
    kv("horizon", fmt(cfg.horizon));
    kv("threshold", fmt(cfg.threshold));

    out += "\n[periodic]\n";
    kv("period", fmt(cfg.period));
    kv("amplitudes", fmt(cfg.amplitudes));
    if (!cfg.phases.empty()) kv("phases", fmt(cfg.phases));
    if (!cfg.eps_list.empty()) kv("eps_list", fmt(cfg.eps_list));
    kv("newton_tol", fmt(cfg.newton_tol));
    kv("fd_step", fmt(cfg.fd_step));
    kv("rel_tol", fmt(cfg.periodic_rel_tol));
    kv("abs_tol", fmt(cfg.periodic_abs_tol));
    kv("dense_samples", std::to_string(cfg.dense_samples));

    out += "\n[output]\n";
    kv("dir", cfg.out_dir);
    kv("seed", std::to_string(cfg.seed));
    kv("axes", cfg.axis_h + ", " + cfg.axis_v);
    return out;
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << write_config(cfg);
}

LienardSystem config_system(const RunConfig& cfg) {
    if (!cfg.name.empty() && cfg.n > 0)
        throw ConfigError("config has both a builtin name and an inline definition");
    if (!cfg.name.empty()) return builtin(cfg.name);
    if (cfg.n < 1) throw ConfigError("config defines no system: set a name or an inline definition");

    std::vector<Expression> f, g;
    f.reserve(cfg.f.size());
    g.reserve(cfg.g.size());
    for (const auto& src : cfg.f) f.push_back(parse(src));
    for (const auto& src : cfg.g) g.push_back(parse(src));
    return make_system(cfg.n, std::move(f), std::move(g), cfg.xdomain, cfg.omega, "inline");
}

Perturbation config_perturbation(const RunConfig& cfg, int n) {
    if (static_cast<int>(cfg.amplitudes.size()) != n)
        throw ConfigError("[periodic] amplitudes needs exactly " + std::to_string(n) + " entries");
    if (!cfg.phases.empty() && static_cast<int>(cfg.phases.size()) != n)
        throw ConfigError("[periodic] phases needs exactly " + std::to_string(n) +
                          " entries (or none)");
    return make_cosine_perturbation(n, cfg.period, cfg.amplitudes, cfg.phases);
}

int axis_flat_index(const std::string& axis, int n) {
    if (axis.size() < 2 || (axis[0] != 'x' && axis[0] != 'y'))
        throw ConfigError("axis '" + axis + "' is not of the form x<i> or y<i>");
    char* end = nullptr;
    const long i = std::strtol(axis.c_str() + 1, &end, 10);
    if (*end != '\0' || i < 1 || i > n)
        throw ConfigError("axis '" + axis + "' is out of range for n = " + std::to_string(n));
    return axis[0] == 'x' ? static_cast<int>(i - 1) : n + static_cast<int>(i - 1);
}

}  // namespace lienard
