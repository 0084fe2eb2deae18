#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/errors.hpp"
#include "lienard/hypotheses.hpp"
#include "lienard/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace lienard;

namespace {

LienardSystem circle_fixture() {
    // Identical squared constraints: the solution set of f1 = f2 = 0 is the
    // whole unit circle, a one-dimensional continuum.
    return make_system(2, {parse("(x1^2+x2^2-1)^2"), parse("(x1^2+x2^2-1)^2")},
                       {parse("x1"), parse("x2")}, {{-5.0, 5.0}, {-5.0, 5.0}},
                       {{-5.0, 5.0}, {-5.0, 5.0}}, "circle");
}

double hausdorff(const std::vector<std::vector<double>>& A,
                 const std::vector<std::vector<double>>& B) {
    auto one_sided = [](const std::vector<std::vector<double>>& P,
                        const std::vector<std::vector<double>>& Q) {
        double worst = 0.0;
        for (const auto& p : P) {
            double best = 1e300;
            for (const auto& q : Q) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < p.size(); ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
                best = std::min(best, std::sqrt(d2));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(A, B), one_sided(B, A));
}

std::vector<std::vector<double>> root_points(const RootFinding& rf) {
    std::vector<std::vector<double>> pts;
    for (const auto& r : rf.roots) pts.push_back(r.x);
    return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sign checks
// ---------------------------------------------------------------------------

TEST_CASE("restoring-force check passes for linear and cubic spring terms") {
    for (const char* name : {"squares", "cubic"}) {
        const auto rep = check_h1(builtin(name));
        CAPTURE(name);
        CHECK(rep.pass);
        CHECK(rep.witness_axis == -1);
        CHECK(rep.samples == 2L * 2 * rep.density);
    }
}

TEST_CASE("restoring-force check fails with a witness between the spurious roots") {
    const auto sys = make_system(2, {parse("0"), parse("0")},
                                 {parse("x1*(x1-1)"), parse("x2")}, {{-5.0, 5.0}, {-5.0, 5.0}},
                                 {{-5.0, 5.0}, {-5.0, 5.0}}, "spoiled");
    const auto rep = check_h1(sys);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness_axis == 0);
    CHECK(rep.witness_x > 0.0);
    CHECK(rep.witness_x < 1.0);
    // x·g = x1²(x1−1) < 0 there, so g itself is negative at the witness.
    CHECK(rep.witness_value < 0.0);
}

TEST_CASE("restoring-force check rejects too-coarse sampling") {
    CHECK_THROWS_AS(static_cast<void>(check_h1(builtin("squares"), 99)), ConfigError);
}

TEST_CASE("damping check passes when every f_i is a product of squares") {
    for (const char* name : {"squares", "ellipses", "intro"}) {
        const auto rep = check_h2(builtin(name));
        CAPTURE(name);
        CHECK(rep.pass);
        CHECK(rep.witness_axis == -1);
    }
}

TEST_CASE("damping check fails with a witness at negative x1 when f1 = x1") {
    const auto sys = make_system(2, {parse("x1"), parse("0")}, {parse("x1"), parse("x2")},
                                 {{-5.0, 5.0}, {-5.0, 5.0}}, {{-5.0, 5.0}, {-5.0, 5.0}},
                                 "signed-damping");
    const auto rep = check_h2(sys);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness_axis == 0);
    REQUIRE(rep.witness_point.size() == 2);
    CHECK(rep.witness_point[0] < 0.0);
    CHECK(rep.witness_value == doctest::Approx(rep.witness_point[0]));
}

TEST_CASE("damping check reduces an oversized grid to stay within budget") {
    const auto rep = check_h2(builtin("squares"), 2001);
    CHECK(rep.pass);
    CHECK(rep.density <= 1000);       // 1000² = 1e6
    CHECK(rep.density >= 900);        // but not far below the cap
}

// ---------------------------------------------------------------------------
// ConstraintSet plumbing
// ---------------------------------------------------------------------------

TEST_CASE("constraint set masks select pinned axes and complementary equations") {
    const auto sys = builtin("squares");

    const ConstraintSet empty_set(sys, 0u);
    CHECK(empty_set.free_count() == 2);
    CHECK(empty_set.describe() == "f1 = 0, f2 = 0");

    const ConstraintSet pin_x2(sys, 2u);
    CHECK(pin_x2.free_count() == 1);
    CHECK(pin_x2.free_axes() == std::vector<int>{0});
    CHECK(pin_x2.describe() == "x2 = 0, f1 = 0");

    const ConstraintSet full(sys, 3u);
    CHECK(full.free_count() == 0);

    CHECK_THROWS_AS(ConstraintSet(sys, 4u), DomainError);
}

TEST_CASE("constraint residuals and analytic jacobian match hand values") {
    const auto sys = builtin("ellipses");
    const ConstraintSet cs(sys, 0u);

    // f1 = (x1²+2x2²−1)², f2 = (2x1²+x2²−1)² at (1, 1): inner values 2 and 2.
    const double u[2] = {1.0, 1.0};
    std::vector<double> F(2);
    cs.residuals({u, 2}, F);
    CHECK(F[0] == doctest::Approx(4.0));
    CHECK(F[1] == doctest::Approx(4.0));
    CHECK(cs.max_residual({u, 2}) == doctest::Approx(4.0));

    // ∂f1/∂x1 = 2(x1²+2x2²−1)·2x1 = 8 at (1,1); ∂f1/∂x2 = 2·2·4x2 = 16.
    std::vector<double> J;
    cs.jacobian({u, 2}, J);
    REQUIRE(J.size() == 4);
    CHECK(J[0] == doctest::Approx(8.0));
    CHECK(J[1] == doctest::Approx(16.0));
    CHECK(J[2] == doctest::Approx(16.0));
    CHECK(J[3] == doctest::Approx(8.0));
}

TEST_CASE("embedding restores pinned coordinates as exact zeros") {
    const auto sys = builtin("squares");
    const ConstraintSet cs(sys, 1u);  // pin x1, free axis x2
    const double u[1] = {-0.75};
    const auto x = cs.embed({u, 1});
    REQUIRE(x.size() == 2);
    CHECK(x[0] == 0.0);
    CHECK(x[1] == -0.75);
}

TEST_CASE("finite-difference jacobian agrees with the analytic one") {
    // A non-polynomial damping term forces the finite-difference path.
    const auto poly = builtin("ellipses");
    const auto mixed = make_system(
        2, {parse("(x1^2+2*x2^2-1)^2"), parse("(2*x1^2+x2^2-1)^2 + 0*sin(x1)")},
        {parse("x1"), parse("x2")}, {{-5.0, 5.0}, {-5.0, 5.0}}, {{-5.0, 5.0}, {-5.0, 5.0}},
        "mixed");
    const ConstraintSet ref(poly, 0u);
    const ConstraintSet fd(mixed, 0u);
    const double u[2] = {0.4, -0.9};
    std::vector<double> Ja, Jn;
    ref.jacobian({u, 2}, Ja);
    fd.jacobian({u, 2}, Jn);
    for (std::size_t k = 0; k < 4; ++k) CHECK(Jn[k] == doctest::Approx(Ja[k]).epsilon(1e-6));
}

// ---------------------------------------------------------------------------
// Root finding against frozen reference sets
// ---------------------------------------------------------------------------

TEST_CASE("squares: all three published intersection sets are recovered") {
    const auto sys = builtin("squares");

    SUBCASE("f1 = f2 = 0") {
        const auto rf = solve_constraint_set(sys, 0u, sys.omega_box);
        const std::vector<std::vector<double>> expect{
            {0.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}, {-1.0, 0.0}, {-1.0, -1.0}};
        REQUIRE(rf.roots.size() == 5);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
        for (const auto& r : rf.roots) {
            CHECK(r.residual < 1e-9);
            CHECK(r.verdict == IsolationVerdict::isolated);
        }
        CHECK_FALSE(rf.budget_exhausted);
    }
    SUBCASE("x2 = 0, f1 = 0") {
        const auto rf = solve_constraint_set(sys, 2u, sys.omega_box);
        const std::vector<std::vector<double>> expect{{0.0, 0.0}, {-1.0, 0.0}};
        REQUIRE(rf.roots.size() == 2);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
        for (const auto& r : rf.roots) CHECK(r.verdict == IsolationVerdict::isolated);
    }
    SUBCASE("x1 = 0, f2 = 0") {
        const auto rf = solve_constraint_set(sys, 1u, sys.omega_box);
        const std::vector<std::vector<double>> expect{{0.0, 0.0}, {0.0, -1.0}};
        REQUIRE(rf.roots.size() == 2);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
        for (const auto& r : rf.roots) CHECK(r.verdict == IsolationVerdict::isolated);
    }
}

TEST_CASE("ellipses: conic intersections land at the four symmetric points") {
    const auto sys = builtin("ellipses");
    const double s = 1.0 / std::sqrt(3.0);

    SUBCASE("f1 = f2 = 0") {
        const auto rf = solve_constraint_set(sys, 0u, sys.omega_box);
        const std::vector<std::vector<double>> expect{{-s, -s}, {-s, s}, {s, -s}, {s, s}};
        REQUIRE(rf.roots.size() == 4);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
        for (const auto& r : rf.roots) {
            CHECK(r.residual < 1e-9);
            CHECK(r.verdict == IsolationVerdict::isolated);
        }
    }
    SUBCASE("x2 = 0, f1 = 0 gives x1 = ±1") {
        const auto rf = solve_constraint_set(sys, 2u, sys.omega_box);
        const std::vector<std::vector<double>> expect{{-1.0, 0.0}, {1.0, 0.0}};
        REQUIRE(rf.roots.size() == 2);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
    }
    SUBCASE("x1 = 0, f2 = 0 gives x2 = ±1") {
        const auto rf = solve_constraint_set(sys, 1u, sys.omega_box);
        const std::vector<std::vector<double>> expect{{0.0, -1.0}, {0.0, 1.0}};
        REQUIRE(rf.roots.size() == 2);
        CHECK(hausdorff(root_points(rf), expect) < 1e-6);
    }
}

TEST_CASE("intro: the full intersection is the origin plus (-1, -1)") {
    const auto sys = builtin("intro");
    const auto rf = solve_constraint_set(sys, 0u, sys.omega_box);
    const std::vector<std::vector<double>> expect{{0.0, 0.0}, {-1.0, -1.0}};
    REQUIRE(rf.roots.size() == 2);
    CHECK(hausdorff(root_points(rf), expect) < 1e-6);
    for (const auto& r : rf.roots) CHECK(r.verdict == IsolationVerdict::isolated);
}

TEST_CASE("pinning every axis yields exactly the origin, for any builtin") {
    for (const auto& name : builtin_names()) {
        const auto sys = builtin(name);
        const auto rf = solve_constraint_set(sys, 3u, sys.omega_box);
        CAPTURE(name);
        REQUIRE(rf.roots.size() == 1);
        CHECK(rf.roots[0].x == std::vector<double>{0.0, 0.0});
        CHECK(rf.roots[0].residual == 0.0);
        CHECK(rf.roots[0].verdict == IsolationVerdict::isolated);
    }
}

TEST_CASE("roots are reported in lexicographic order with tight residuals") {
    const auto sys = builtin("squares");
    const auto rf = solve_constraint_set(sys, 0u, sys.omega_box);
    for (std::size_t k = 1; k < rf.roots.size(); ++k) {
        const auto& a = rf.roots[k - 1].x;
        const auto& b = rf.roots[k].x;
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
}

TEST_CASE("subdivision order does not affect the recovered root set") {
    const auto sys = builtin("squares");
    SolveOptions shuffled;
    shuffled.shuffle_seed = 0x5eedu;
    const auto base = solve_constraint_set(sys, 0u, sys.omega_box);
    const auto perm = solve_constraint_set(sys, 0u, sys.omega_box, shuffled);
    REQUIRE(base.roots.size() == perm.roots.size());
    for (std::size_t k = 0; k < base.roots.size(); ++k) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            const double d = base.roots[k].x[i] - perm.roots[k].x[i];
            d2 += d * d;
        }
        CHECK(std::sqrt(d2) < 1e-12);
    }
}

TEST_CASE("a box that excludes a pinned zero reports no solutions") {
    const auto sys = builtin("squares");
    const std::vector<Interval> box{{0.5, 2.0}, {-2.0, 2.0}};
    const auto rf = solve_constraint_set(sys, 1u, box);  // needs x1 = 0
    CHECK(rf.roots.empty());
    CHECK(rf.note.find("x1 = 0") != std::string::npos);
}

TEST_CASE("searching a box that misses all roots is an honest empty result") {
    const auto sys = builtin("ellipses");
    const std::vector<Interval> box{{2.0, 4.0}, {2.0, 4.0}};
    const auto rf = solve_constraint_set(sys, 0u, box);
    CHECK(rf.roots.empty());
    CHECK(rf.note == "no solutions in the box");
    CHECK_FALSE(rf.budget_exhausted);
}

// ---------------------------------------------------------------------------
// Isolation probes
// ---------------------------------------------------------------------------

TEST_CASE("probe certifies transversal conic crossings as isolated") {
    const auto sys = builtin("ellipses");
    const ConstraintSet cs(sys, 0u);
    const double s = 1.0 / std::sqrt(3.0);
    const std::vector<double> root{s, s};
    const auto res = isolation_probe(cs, root);
    CHECK(res.verdict == IsolationVerdict::isolated);
    REQUIRE(res.min_residuals.size() == res.radii.size());
    for (std::size_t k = 0; k < res.radii.size(); ++k)
        CHECK(res.min_residuals[k] > 1e-3 * res.radii[k] * res.radii[k]);
}

TEST_CASE("probe certifies the squares origin as isolated") {
    const auto sys = builtin("squares");
    const ConstraintSet cs(sys, 0u);
    const std::vector<double> root{0.0, 0.0};
    CHECK(isolation_probe(cs, root).verdict == IsolationVerdict::isolated);
}

TEST_CASE("probe flags a shared circle of zeros as a suspected continuum") {
    const auto sys = circle_fixture();
    const ConstraintSet cs(sys, 0u);
    const std::vector<double> root{1.0, 0.0};
    const auto res = isolation_probe(cs, root);
    CHECK(res.verdict == IsolationVerdict::suspected_continuum);
    for (double m : res.min_residuals) CHECK(m < 1e-9);
}

// ---------------------------------------------------------------------------
// Full battery
// ---------------------------------------------------------------------------

TEST_CASE("full hypothesis battery passes on the published example systems") {
    for (const char* name : {"intro", "squares", "ellipses", "cubic"}) {
        const auto rep = check_all(builtin(name));
        CAPTURE(name);
        CHECK(rep.h1.pass);
        CHECK(rep.h2.pass);
        CHECK(rep.pass);
        CHECK(rep.sets.size() == 4);
        for (const auto& rf : rep.sets)
            for (const auto& r : rf.roots) CHECK(r.verdict == IsolationVerdict::isolated);
    }
}

TEST_CASE("full battery fails on the circle fixture with continuum evidence") {
    const auto rep = check_all(circle_fixture());
    CHECK_FALSE(rep.pass);
    CHECK(rep.h1.pass);
    CHECK(rep.h2.pass);
    bool saw_continuum = false;
    for (const auto& rf : rep.sets)
        for (const auto& r : rf.roots)
            if (r.verdict == IsolationVerdict::suspected_continuum) saw_continuum = true;
    CHECK(saw_continuum);
    CHECK(rep.note.find("isolated") != std::string::npos);
}

TEST_CASE("full battery fails on the undamped oscillator, whose f vanish identically") {
    const auto rep = check_all(builtin("oscillator"));
    CHECK_FALSE(rep.pass);
    // Every point solves f = 0, so the subdivider hits its root cap and the
    // retained points read as a continuum.
    bool saw_trouble = false;
    for (const auto& rf : rep.sets) {
        if (rf.budget_exhausted) saw_trouble = true;
        for (const auto& r : rf.roots)
            if (r.verdict == IsolationVerdict::suspected_continuum) saw_trouble = true;
    }
    CHECK(saw_trouble);
}

TEST_CASE("subset enumeration rejects dimensions beyond the budget") {
    std::vector<Expression> f, g;
    std::vector<Interval> dom, omega;
    for (int i = 0; i < 13; ++i) {
        f.push_back(parse("0"));
        g.push_back(parse("x" + std::to_string(i + 1)));
        dom.push_back({-1.0, 1.0});
        omega.push_back({-1.0, 1.0});
    }
    const auto sys = make_system(13, std::move(f), std::move(g), std::move(dom),
                                 std::move(omega), "wide");
    CHECK_THROWS_AS(static_cast<void>(check_all(sys)), DomainError);
}
