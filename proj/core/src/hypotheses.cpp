#include "lienard/hypotheses.hpp"

#include "lienard/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace lienard {

namespace {

constexpr double kFdStep = 1e-6;

int reduced_density(int requested, int axes, double budget) {
    int d = std::max(3, requested);
    while (d > 3) {
        double total = 1.0;
        for (int a = 0; a < axes; ++a) total *= d;
        if (total <= budget) break;
        --d;
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sign checks
// ---------------------------------------------------------------------------

RestoringSignCheck check_h1(const LienardSystem& sys, int density) {
    if (density < 100) throw ConfigError("check_h1: density must be at least 100 per half-axis");
    RestoringSignCheck rep;
    rep.density = density;

    const auto n = static_cast<std::size_t>(sys.n);
    std::vector<double> xs(n, 0.0), ys(n, 0.0);
    const EvalContext ctx{xs, ys};

    auto probe = [&](int axis, double x) {
        xs[static_cast<std::size_t>(axis)] = x;
        const double gv = sys.g[static_cast<std::size_t>(axis)].eval(ctx);
        xs[static_cast<std::size_t>(axis)] = 0.0;
        ++rep.samples;
        if (!(x * gv > 0.0) && rep.pass) {
            rep.pass = false;
            rep.witness_axis = axis;
            rep.witness_x = x;
            rep.witness_value = gv;
        }
        return rep.pass;
    };

    // Scan each half-axis outward from the origin so the witness of a
    // violation is the sample closest to the equilibrium.
    for (int i = 0; i < sys.n && rep.pass; ++i) {
        const double a = sys.xdomain[static_cast<std::size_t>(i)].lo;
        const double b = sys.xdomain[static_cast<std::size_t>(i)].hi;
        for (int k = 1; k <= density && rep.pass; ++k)
            probe(i, b * static_cast<double>(k) / static_cast<double>(density + 1));
        for (int k = 1; k <= density && rep.pass; ++k)
            probe(i, a * static_cast<double>(k) / static_cast<double>(density + 1));
    }
    return rep;
}

DampingSignCheck check_h2(const LienardSystem& sys, int density) {
    if (density < 3) throw ConfigError("check_h2: density must be at least 3 per axis");
    DampingSignCheck rep;
    rep.density = reduced_density(density, sys.n, 1e6);

    const auto n = static_cast<std::size_t>(sys.n);
    std::vector<double> xs(n, 0.0), ys(n, 0.0);
    const EvalContext ctx{xs, ys};

    long total = 1;
    for (int a = 0; a < sys.n; ++a) total *= rep.density;

    for (long flat = 0; flat < total && rep.pass; ++flat) {
        long rest = flat;
        for (std::size_t a = n; a-- > 0;) {
            const long idx = rest % rep.density;
            rest /= rep.density;
            const Interval& box = sys.omega_box[a];
            xs[a] = box.lo + (box.hi - box.lo) * static_cast<double>(idx) /
                                 static_cast<double>(rep.density - 1);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double fv = sys.f[i].eval(ctx);
            ++rep.samples;
            if (fv < -1e-12) {
                rep.pass = false;
                rep.witness_axis = static_cast<int>(i);
                rep.witness_point = xs;
                rep.witness_value = fv;
                break;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// ConstraintSet
// ---------------------------------------------------------------------------

ConstraintSet::ConstraintSet(const LienardSystem& sys, unsigned mask) : n_(sys.n), mask_(mask) {
    if (sys.n > 31 || mask >= (1u << sys.n))
        throw DomainError("constraint set: subset mask out of range for this dimension");
    for (int i = 0; i < n_; ++i)
        if (!pinned(i)) free_.push_back(i);
    for (int j = 0; j < n_; ++j) {
        if (pinned(j)) continue;
        eqs_.push_back(sys.f[static_cast<std::size_t>(j)]);
    }
    grads_.resize(eqs_.size());
    for (std::size_t e = 0; e < eqs_.size() && analytic_; ++e) {
        for (int k : free_) {
            try {
                grads_[e].push_back(eqs_[e].differentiate(VarKind::X, k));
            } catch (const NonPolynomialError&) {
                analytic_ = false;
                grads_.assign(eqs_.size(), {});
                break;
            }
        }
    }
}

std::vector<double> ConstraintSet::embed(std::span<const double> u) const {
    std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
    for (std::size_t k = 0; k < free_.size(); ++k) x[static_cast<std::size_t>(free_[k])] = u[k];
    return x;
}

void ConstraintSet::residuals(std::span<const double> u, std::span<double> out) const {
    std::vector<double> xs(static_cast<std::size_t>(n_), 0.0);
    const std::vector<double> ys(static_cast<std::size_t>(n_), 0.0);
    for (std::size_t k = 0; k < free_.size(); ++k) xs[static_cast<std::size_t>(free_[k])] = u[k];
    const EvalContext ctx{xs, ys};
    for (std::size_t e = 0; e < eqs_.size(); ++e) out[e] = eqs_[e].eval(ctx);
}

double ConstraintSet::max_residual(std::span<const double> u) const {
    std::vector<double> r(eqs_.size());
    residuals(u, r);
    double m = 0.0;
    for (double v : r) m = std::max(m, std::fabs(v));
    return m;
}

void ConstraintSet::jacobian(std::span<const double> u, std::vector<double>& J) const {
    const std::size_t d = free_.size();
    J.assign(d * d, 0.0);
    if (analytic_) {
        std::vector<double> xs(static_cast<std::size_t>(n_), 0.0);
        const std::vector<double> ys(static_cast<std::size_t>(n_), 0.0);
        for (std::size_t k = 0; k < d; ++k) xs[static_cast<std::size_t>(free_[k])] = u[k];
        const EvalContext ctx{xs, ys};
        for (std::size_t e = 0; e < d; ++e)
            for (std::size_t k = 0; k < d; ++k) J[e * d + k] = grads_[e][k].eval(ctx);
        return;
    }
    std::vector<double> up(u.begin(), u.end()), um(u.begin(), u.end());
    std::vector<double> rp(d), rm(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double h = kFdStep * std::max(1.0, std::fabs(u[k]));
        up[k] = u[k] + h;
        um[k] = u[k] - h;
        residuals(up, rp);
        residuals(um, rm);
        for (std::size_t e = 0; e < d; ++e) J[e * d + k] = (rp[e] - rm[e]) / (2.0 * h);
        up[k] = u[k];
        um[k] = u[k];
    }
}

std::string ConstraintSet::describe() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
        if (!pinned(i)) continue;
        if (!s.empty()) s += ", ";
        s += "x" + std::to_string(i + 1) + " = 0";
    }
    for (int j = 0; j < n_; ++j) {
        if (pinned(j)) continue;
        if (!s.empty()) s += ", ";
        s += "f" + std::to_string(j + 1) + " = 0";
    }
    return s;
}

std::string to_string(IsolationVerdict v) {
    switch (v) {
        case IsolationVerdict::isolated: return "isolated";
        case IsolationVerdict::suspected_continuum: return "suspected_continuum";
        case IsolationVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Sphere-constrained residual minimization (isolation probe)
// ---------------------------------------------------------------------------

namespace {

double objective(const ConstraintSet& cs, std::span<const double> u, std::vector<double>& scratch) {
    const auto d = static_cast<std::size_t>(cs.free_count());
    scratch.resize(d);
    cs.residuals(u, scratch);
    double s = 0.0;
    for (double v : scratch) s += v * v;
    return 0.5 * s;
}

/// Golden-section refinement of the angle parameter around [lo, hi].
double refine_angle_2d(const ConstraintSet& cs, std::span<const double> center, double r, double lo,
                       double hi) {
    constexpr double invphi = 0.6180339887498949;
    std::vector<double> scratch;
    auto value = [&](double phi) {
        const double u[2] = {center[0] + r * std::cos(phi), center[1] + r * std::sin(phi)};
        return objective(cs, {u, 2}, scratch);
    };
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = value(c), fd = value(d);
    for (int it = 0; it < 70; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = value(d);
        }
    }
    return 0.5 * (a + b);
}

/// Smallest max-residual over the sphere of radius r about `center` in the
/// free coordinates.
double sphere_min_residual(const ConstraintSet& cs, std::span<const double> center, double r,
                           const ProbeOptions& opts) {
    const auto d = static_cast<std::size_t>(cs.free_count());
    double best = std::numeric_limits<double>::infinity();

    if (d == 1) {
        for (double s : {-r, r}) {
            const double u = center[0] + s;
            best = std::min(best, cs.max_residual({&u, 1}));
        }
        return best;
    }

    if (d == 2) {
        // Dense angular scan, then golden-section refinement of local minima.
        constexpr int kScan = 256;
        std::vector<double> vals(kScan);
        std::vector<double> scratch;
        for (int k = 0; k < kScan; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / kScan;
            const double u[2] = {center[0] + r * std::cos(phi), center[1] + r * std::sin(phi)};
            vals[static_cast<std::size_t>(k)] = objective(cs, {u, 2}, scratch);
        }
        for (int k = 0; k < kScan; ++k) {
            const double prev = vals[static_cast<std::size_t>((k + kScan - 1) % kScan)];
            const double next = vals[static_cast<std::size_t>((k + 1) % kScan)];
            const double here = vals[static_cast<std::size_t>(k)];
            if (here > prev || here > next) continue;
            const double phi = 2.0 * std::numbers::pi * k / kScan;
            const double width = 2.0 * std::numbers::pi / kScan;
            const double phi_star = refine_angle_2d(cs, center, r, phi - width, phi + width);
            const double u[2] = {center[0] + r * std::cos(phi_star),
                                 center[1] + r * std::sin(phi_star)};
            best = std::min(best, cs.max_residual({u, 2}));
        }
        return best;
    }

    // d ≥ 3: projected-gradient descent on the sphere from seeded starts.
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> u(d), g(d), trial(d), scratch, J;
    for (int start = 0; start < opts.starts; ++start) {
        double norm = 0.0;
        for (auto& v : u) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (std::size_t k = 0; k < d; ++k) u[k] = center[k] + r * u[k] / norm;

        double fu = objective(cs, u, scratch);
        for (int it = 0; it < 200; ++it) {
            // Gradient of ½ Σ F² is Jᵀ F.
            cs.jacobian(u, J);
            cs.residuals(u, scratch);
            for (std::size_t k = 0; k < d; ++k) {
                g[k] = 0.0;
                for (std::size_t e = 0; e < d; ++e) g[k] += J[e * d + k] * scratch[e];
            }
            // Project out the radial component to stay on the sphere.
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += g[k] * (u[k] - center[k]);
            dot /= r * r;
            double gnorm = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                g[k] -= dot * (u[k] - center[k]);
                gnorm += g[k] * g[k];
            }
            gnorm = std::sqrt(gnorm);
            if (gnorm * r < 1e-18) break;

            double step = 0.1 * r / gnorm;
            bool improved = false;
            for (int bt = 0; bt < 25; ++bt, step *= 0.5) {
                double tn = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    trial[k] = u[k] - step * g[k] - center[k];
                    tn += trial[k] * trial[k];
                }
                tn = std::sqrt(tn);
                for (std::size_t k = 0; k < d; ++k) trial[k] = center[k] + r * trial[k] / tn;
                const double ft = objective(cs, trial, scratch);
                if (ft < fu) {
                    u = trial;
                    fu = ft;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        best = std::min(best, cs.max_residual(u));
    }
    return best;
}

}  // namespace

ProbeResult isolation_probe(const ConstraintSet& cs, std::span<const double> root,
                            const ProbeOptions& opts) {
    ProbeResult res;
    res.radii = opts.radii;
    if (cs.free_count() == 0) {
        // Every coordinate is pinned: the constraint set is exactly {O}.
        res.verdict = IsolationVerdict::isolated;
        return res;
    }
    std::vector<double> center;
    for (int k : cs.free_axes()) center.push_back(root[static_cast<std::size_t>(k)]);

    bool all_clear = true, all_touch = true;
    for (double r : opts.radii) {
        const double m = sphere_min_residual(cs, center, r, opts);
        res.min_residuals.push_back(m);
        if (m <= opts.clearance_theta * r * r) all_clear = false;
        if (m >= opts.root_tol) all_touch = false;
    }
    if (all_clear)
        res.verdict = IsolationVerdict::isolated;
    else if (all_touch)
        res.verdict = IsolationVerdict::suspected_continuum;
    else
        res.verdict = IsolationVerdict::inconclusive;
    return res;
}

// ---------------------------------------------------------------------------
// Subdivision search with Levenberg–Marquardt polishing
// ---------------------------------------------------------------------------

namespace {

struct Cell {
    std::vector<double> lo, hi;
    int depth = 0;
};

/// Polish a candidate with Levenberg–Marquardt on the square system.
/// Returns the final max-residual; u is updated in place.
double lm_polish(const ConstraintSet& cs, std::vector<double>& u) {
    const auto d = static_cast<std::size_t>(cs.free_count());
    std::vector<double> F(d), J;
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd rhs(d), delta(d);

    cs.residuals(u, F);
    double f2 = 0.0;
    for (double v : F) f2 += v * v;
    if (f2 < 1e-28) {
        double m0 = 0.0;
        for (double v : F) m0 = std::max(m0, std::fabs(v));
        return m0;
    }

    double lambda = 1e-3;
    int stall = 0;
    for (int it = 0; it < 200 && stall < 8; ++it) {
        cs.jacobian(u, J);
        Eigen::MatrixXd Jm(d, d);
        for (std::size_t e = 0; e < d; ++e)
            for (std::size_t k = 0; k < d; ++k) Jm(static_cast<long>(e), static_cast<long>(k)) = J[e * d + k];
        A = Jm.transpose() * Jm;
        for (std::size_t k = 0; k < d; ++k) A(static_cast<long>(k), static_cast<long>(k)) += lambda;
        rhs = -Jm.transpose() * Eigen::Map<Eigen::VectorXd>(F.data(), static_cast<long>(d));
        delta = A.ldlt().solve(rhs);

        std::vector<double> trial(d);
        double step2 = 0.0, u2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            trial[k] = u[k] + delta(static_cast<long>(k));
            step2 += delta(static_cast<long>(k)) * delta(static_cast<long>(k));
            u2 += u[k] * u[k];
        }
        std::vector<double> Ft(d);
        cs.residuals(trial, Ft);
        double ft2 = 0.0;
        for (double v : Ft) ft2 += v * v;

        if (ft2 < f2) {
            u = trial;
            F = Ft;
            f2 = ft2;
            lambda = std::max(lambda * 0.3, 1e-12);
            stall = 0;
            if (std::sqrt(step2) < 1e-15 * (1.0 + std::sqrt(u2))) break;
            if (f2 < 1e-28) break;  // max-residual at the 1e-14 floor
        } else {
            lambda = std::min(lambda * 10.0, 1e10);
            ++stall;
        }
    }
    double m = 0.0;
    for (double v : F) m = std::max(m, std::fabs(v));
    return m;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

RootFinding solve_constraint_set(const LienardSystem& sys, unsigned mask,
                                 std::span<const Interval> box, const SolveOptions& opts) {
    if (box.size() != static_cast<std::size_t>(sys.n))
        throw DomainError("solve_constraint_set: box must have one interval per axis");
    for (std::size_t i = 0; i < box.size(); ++i)
        if (!(box[i].lo <= box[i].hi))
            throw DomainError("solve_constraint_set: malformed box interval");

    const ConstraintSet cs(sys, mask);
    RootFinding out;
    out.mask = mask;
    out.n = sys.n;
    out.equations = cs.describe();
    out.box.assign(box.begin(), box.end());

    // Pinned axes must admit x_i = 0 inside the box.
    for (int i = 0; i < sys.n; ++i) {
        if (cs.pinned(i) && (box[static_cast<std::size_t>(i)].lo > 0.0 ||
                             box[static_cast<std::size_t>(i)].hi < 0.0)) {
            out.note = "box excludes x" + std::to_string(i + 1) + " = 0; no solutions";
            return out;
        }
    }

    const auto d = static_cast<std::size_t>(cs.free_count());
    if (d == 0) {
        RootRecord origin;
        origin.x.assign(static_cast<std::size_t>(sys.n), 0.0);
        origin.residual = 0.0;
        origin.verdict = IsolationVerdict::isolated;
        out.roots.push_back(std::move(origin));
        out.note = "all coordinates pinned; the set is exactly the origin";
        return out;
    }

    // --- subdivision ---------------------------------------------------
    Cell top;
    for (int k : cs.free_axes()) {
        top.lo.push_back(box[static_cast<std::size_t>(k)].lo);
        top.hi.push_back(box[static_cast<std::size_t>(k)].hi);
    }
    std::vector<Cell> stack{top};
    std::vector<std::vector<double>> candidates;
    std::mt19937_64 shuffle_rng(opts.shuffle_seed);

    std::vector<double> center(d), probe_pt(d), J;
    std::vector<double> Fc(d);

    while (!stack.empty()) {
        if (++out.cells_visited > opts.max_cells) {
            out.budget_exhausted = true;
            out.note = "subdivision cell budget exhausted; results are incomplete";
            break;
        }
        Cell cell = std::move(stack.back());
        stack.pop_back();

        double widest = 0.0, r2 = 0.0;
        std::size_t wax = 0;
        for (std::size_t k = 0; k < d; ++k) {
            const double w = cell.hi[k] - cell.lo[k];
            if (w > widest) {
                widest = w;
                wax = k;
            }
            r2 += 0.25 * w * w;
            center[k] = 0.5 * (cell.lo[k] + cell.hi[k]);
        }
        const double radius = std::sqrt(r2);

        // Gradient-based exclusion: an equation that cannot reach zero over
        // the cell (|F(center)| beyond the sampled slope times the radius)
        // rules the whole cell out. Skipped near the top of the tree where
        // sampled slopes are unrepresentative.
        if (cell.depth >= 2) {
            cs.residuals(center, Fc);
            std::vector<double> grad_norm(d, 0.0);
            auto absorb = [&](std::span<const double> p) {
                cs.jacobian(p, J);
                for (std::size_t e = 0; e < d; ++e) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < d; ++k) s += J[e * d + k] * J[e * d + k];
                    grad_norm[e] = std::max(grad_norm[e], std::sqrt(s));
                }
            };
            absorb(center);
            for (std::size_t k = 0; k < d; ++k) {
                const double w = 0.5 * (cell.hi[k] - cell.lo[k]);
                probe_pt = center;
                probe_pt[k] = center[k] + w;
                absorb(probe_pt);
                probe_pt[k] = center[k] - w;
                absorb(probe_pt);
            }
            bool excluded = false;
            for (std::size_t e = 0; e < d && !excluded; ++e)
                if (std::fabs(Fc[e]) > 3.0 * grad_norm[e] * radius) excluded = true;
            if (excluded) continue;
        }

        if (widest <= opts.seed_cell) {
            candidates.push_back(center);
            continue;
        }
        if (cell.depth >= opts.max_depth) {
            out.budget_exhausted = true;
            out.note = "subdivision depth cap reached; results are incomplete";
            continue;
        }

        Cell left = cell, right = cell;
        const double mid = 0.5 * (cell.lo[wax] + cell.hi[wax]);
        left.hi[wax] = mid;
        right.lo[wax] = mid;
        left.depth = right.depth = cell.depth + 1;
        if (opts.shuffle_seed != 0 && (shuffle_rng() & 1u)) std::swap(left, right);
        stack.push_back(std::move(left));
        stack.push_back(std::move(right));
    }

    // --- polish and cluster ---------------------------------------------
    struct Polished {
        std::vector<double> u;
        double residual;
    };
    std::vector<Polished> polished;
    for (auto& cand : candidates) {
        std::vector<double> u = cand;
        const double res = lm_polish(cs, u);
        if (res > opts.root_tol) continue;
        bool inside = true;
        for (std::size_t k = 0; k < d; ++k)
            if (u[k] < top.lo[k] - 1e-9 || u[k] > top.hi[k] + 1e-9) inside = false;
        if (!inside) continue;
        polished.push_back({std::move(u), res});
    }
    std::sort(polished.begin(), polished.end(), [](const Polished& a, const Polished& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return lex_less(a.u, b.u);
    });

    std::vector<Polished> kept;
    bool truncated = false;
    for (auto& p : polished) {
        bool dup = false;
        for (const auto& q : kept) {
            double dist2 = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                dist2 += (p.u[k] - q.u[k]) * (p.u[k] - q.u[k]);
            if (dist2 < opts.cluster_radius * opts.cluster_radius) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        if (static_cast<int>(kept.size()) >= opts.max_roots) {
            truncated = true;
            break;
        }
        kept.push_back(std::move(p));
    }
    if (truncated) {
        out.budget_exhausted = true;
        out.note = "root list truncated at " + std::to_string(opts.max_roots) +
                   " points; the zero set may be positive-dimensional";
    }

    for (auto& p : kept) {
        RootRecord rec;
        rec.x = cs.embed(p.u);
        rec.residual = p.residual;
        const ProbeResult probe = isolation_probe(cs, rec.x, opts.probe);
        rec.verdict = probe.verdict;
        rec.probe_min_residuals = probe.min_residuals;
        out.roots.push_back(std::move(rec));
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootRecord& a, const RootRecord& b) { return lex_less(a.x, b.x); });
    if (out.roots.empty() && out.note.empty()) out.note = "no solutions in the box";
    return out;
}

// ---------------------------------------------------------------------------
// Full battery
// ---------------------------------------------------------------------------

HypothesisReport check_all(const LienardSystem& sys, const CheckAllOptions& opts) {
    if (sys.n > 12)
        throw DomainError("check_all: dimension exceeds the subset enumeration budget (n ≤ 12)");

    HypothesisReport rep;
    rep.h1 = check_h1(sys, opts.h1_density);
    rep.h2 = check_h2(sys, opts.h2_density);

    const unsigned count = 1u << sys.n;
    rep.sets.reserve(count);
    bool roots_ok = true;
    for (unsigned mask = 0; mask < count; ++mask) {
        RootFinding rf = solve_constraint_set(sys, mask, sys.omega_box, opts.solve);
        if (rf.budget_exhausted) roots_ok = false;
        for (const RootRecord& r : rf.roots)
            if (r.verdict != IsolationVerdict::isolated) roots_ok = false;
        rep.sets.push_back(std::move(rf));
    }
    rep.pass = rep.h1.pass && rep.h2.pass && roots_ok;
    if (!rep.pass) {
        if (!rep.h1.pass)
            rep.note = "restoring-force sign condition fails";
        else if (!rep.h2.pass)
            rep.note = "damping nonnegativity fails on the omega box";
        else
            rep.note = "some constraint-set intersection is not a set of isolated points";
    }
    return rep;
}

}  // namespace lienard
