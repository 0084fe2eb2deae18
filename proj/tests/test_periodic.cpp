#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/errors.hpp"
#include "lienard/model.hpp"
#include "lienard/periodic.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace lienard;

namespace {

constexpr double pi = std::numbers::pi;

// Forcing eps·cos(2πt/T) on the first component only. With T = π the
// drive frequency is 2, so the linearized first block x'' + x = eps·cos(2t)
// answers with amplitude eps/|1 − 4| = eps/3 and phase π (gain is −1/3).
Perturbation first_axis_forcing(double T) {
    return make_cosine_perturbation(2, T, std::vector<double>{1.0, 0.0});
}

State origin() { return State::zero(2); }

}  // namespace

// ---------------------------------------------------------------------------
// The period map
// ---------------------------------------------------------------------------

TEST_CASE("unforced origin is an exact fixed point of the period map") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const State out = period_map(sys, pert, 0.0, origin());
    CHECK(out.norm() == 0.0);  // the field vanishes identically along the run
}

TEST_CASE("the oscillator returns after its natural period") {
    const auto sys = builtin("oscillator");
    const auto pert = first_axis_forcing(2.0 * pi);
    State z0;
    z0.x = {0.5, -0.3};
    z0.y = {0.2, 0.7};
    const State out = period_map(sys, pert, 0.0, z0);  // eps = 0: unforced
    for (int i = 0; i < 2; ++i) {
        CHECK(std::fabs(out.x[i] - z0.x[i]) < 1e-7);
        CHECK(std::fabs(out.y[i] - z0.y[i]) < 1e-7);
    }
}

TEST_CASE("forcing moves the origin off the fixed point") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const State out = period_map(sys, pert, 0.1, origin());
    CHECK(out.norm() > 1e-3);
}

TEST_CASE("period map reports an orbit that leaves the domain") {
    // Resonant forcing at eps = 20 grows past |x1| = 5 well before t = 2π.
    const auto sys = builtin("oscillator");
    const auto pert = first_axis_forcing(2.0 * pi);
    CHECK_THROWS_AS(static_cast<void>(period_map(sys, pert, 20.0, origin())), Error);
}

// ---------------------------------------------------------------------------
// Shooting
// ---------------------------------------------------------------------------

TEST_CASE("shooting the unforced system from the origin is exact") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.0, origin());
    CHECK(orbit.converged);
    CHECK(orbit.z_star.norm() == 0.0);
    CHECK(orbit.residual == 0.0);
    CHECK(orbit.amplitude == 0.0);
    CHECK(orbit.newton_iterations == 0);
}

TEST_CASE("forced orbit matches the linear-response gain") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const double eps = 0.1;
    const auto orbit = shoot(sys, pert, eps, origin());
    REQUIRE(orbit.converged);
    CHECK(orbit.residual < 1e-9);
    CHECK(orbit.newton_iterations <= 10);

    // x1(t) ≈ −(eps/3)·cos(2t): starting value −eps/3, sup-norm eps/3.
    CHECK(std::fabs(orbit.z_star.x[0] + eps / 3.0) < 1e-3);
    CHECK(std::fabs(orbit.x1_amplitude - eps / 3.0) < 0.2 * eps / 3.0);

    // The second block is never forced; x2 ≡ 0 solves it exactly.
    CHECK(std::fabs(orbit.z_star.x[1]) < 1e-6);
    CHECK(std::fabs(orbit.z_star.y[1]) < 1e-6);
}

TEST_CASE("multipliers of the forced orbit sit inside the unit circle") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.1, origin());
    REQUIRE(orbit.converged);
    REQUIRE(orbit.multiplier_moduli.size() == 4);
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(orbit.multiplier_moduli[k] <= orbit.multiplier_moduli[k - 1]);
    // The first block feels damping ~x1² along the orbit; the second block
    // is undamped on the orbit itself and contracts only through the
    // higher-order terms the difference quotient picks up, so its pair of
    // moduli hugs 1 from below.
    CHECK(orbit.multiplier_moduli[0] < 1.0);
    CHECK(orbit.multiplier_moduli[0] > 0.99);
    // Averaging the damping along the orbit: ⟨f1⟩ ≈ (eps/3)²/2, so the
    // first block's moduli land near exp(−⟨f1⟩T/2) ≈ 0.99913.
    CHECK(orbit.multiplier_moduli[3] < 0.9995);
    CHECK(orbit.multiplier_moduli[3] > 0.995);
}

TEST_CASE("monodromy determinant obeys the trace formula") {
    // det M = exp(−∫₀ᵀ Σᵢ fᵢ(X(t)) dt): the field's divergence is −Σfᵢ.
    // Simpson over the stored samples gives an oracle for the product of
    // the multipliers that never touches the difference quotients.
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.1, origin());
    REQUIRE(orbit.converged);
    REQUIRE(orbit.samples.size() == 257);

    std::vector<double> sum_f(orbit.samples.size());
    for (std::size_t k = 0; k < orbit.samples.size(); ++k) {
        const std::vector<double> x(orbit.samples[k].begin(), orbit.samples[k].begin() + 2);
        const std::vector<double> y(orbit.samples[k].begin() + 2, orbit.samples[k].end());
        const EvalContext ctx{x, y};
        sum_f[k] = sys.f[0].eval(ctx) + sys.f[1].eval(ctx);
    }
    const double h = orbit.sample_times[1] - orbit.sample_times[0];
    double integral = 0.0;
    for (std::size_t k = 0; k + 2 < sum_f.size(); k += 2)
        integral += h / 3.0 * (sum_f[k] + 4.0 * sum_f[k + 1] + sum_f[k + 2]);

    std::complex<double> prod{1.0, 0.0};
    for (const auto& m : orbit.multipliers) prod *= m;
    const double expected = std::exp(-integral);
    CHECK(std::fabs(std::abs(prod) - expected) < 1e-4 * expected);
}

TEST_CASE("warm starts cut the iteration count") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto coarse = shoot(sys, pert, 0.1, origin());
    REQUIRE(coarse.converged);
    const auto fine = shoot(sys, pert, 0.05, coarse.z_star);
    CHECK(fine.converged);
    CHECK(fine.newton_iterations <= 5);
}

TEST_CASE("resonant forcing defeats the shooting iteration honestly") {
    // At T = 2π the drive sits exactly on the oscillator's frequency; no
    // periodic solution exists and the shooting matrix is I − I.
    const auto sys = builtin("oscillator");
    const auto pert = first_axis_forcing(2.0 * pi);
    const auto orbit = shoot(sys, pert, 0.5, origin());
    CHECK_FALSE(orbit.converged);
    CHECK((orbit.jacobian_singular || orbit.note.find("no progress") != std::string::npos));
    CHECK_FALSE(orbit.note.empty());
}

TEST_CASE("an unintegrable guess is reported, not thrown") {
    // The undamped free orbit through (4.9, 0) with y1 = 3 has amplitude
    // √(4.9² + 3²) ≈ 5.75 and must cross the box edge at x1 = 5.
    const auto sys = builtin("oscillator");
    const auto pert = first_axis_forcing(2.0 * pi);
    State guess;
    guess.x = {4.9, 0.0};
    guess.y = {3.0, 0.0};
    const auto orbit = shoot(sys, pert, 0.0, guess);
    CHECK_FALSE(orbit.converged);
    CHECK(orbit.note.find("cannot be integrated") != std::string::npos);
    CHECK(orbit.samples.empty());
    CHECK(orbit.multipliers.empty());
}

TEST_CASE("sample grid covers one full period") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.1, origin());
    REQUIRE(orbit.converged);
    REQUIRE(orbit.sample_times.size() == 257);
    CHECK(orbit.sample_times.front() == 0.0);
    CHECK(orbit.sample_times.back() == pert.T);

    // Half a period apart the state must differ: the orbit is a loop, not a
    // rest point.
    const auto& a = orbit.samples.front();
    const auto& b = orbit.samples[128];
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::fabs(a[k] - b[k]));
    CHECK(d > 0.01);
}

TEST_CASE("too few samples per period is a configuration error") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    ShootOptions opts;
    opts.dense_samples = 100;
    CHECK_THROWS_AS(static_cast<void>(shoot(sys, pert, 0.1, origin(), opts)), ConfigError);
}

// ---------------------------------------------------------------------------
// Orbital stability
// ---------------------------------------------------------------------------

TEST_CASE("contracting multipliers pull a displaced start back to the orbit") {
    // Both blocks of this system carry damping f_i(0,0) = 1 at the origin,
    // so every multiplier is near e^{−π/2} ≈ 0.21 — far inside the unit
    // circle — and twenty periods crush a 1e-4 displacement far below 1e-5.
    const auto sys = builtin("ellipses");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.1, origin());
    REQUIRE(orbit.converged);
    for (double m : orbit.multiplier_moduli) CHECK(m < 0.9);

    State z = orbit.z_star;
    z.x[0] += 1e-4;
    for (int k = 0; k < 20; ++k) z = period_map(sys, pert, 0.1, z);
    double dist = 0.0;
    for (int i = 0; i < 2; ++i) {
        dist = std::max(dist, std::fabs(z.x[i] - orbit.z_star.x[i]));
        dist = std::max(dist, std::fabs(z.y[i] - orbit.z_star.y[i]));
    }
    CHECK(dist < 1e-5);
}

// ---------------------------------------------------------------------------
// Continuation in the forcing strength
// ---------------------------------------------------------------------------

TEST_CASE("continuation tracks the orbit family down in eps") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    const auto res = continuation(sys, pert, eps, origin());
    CHECK_FALSE(res.aborted);
    CHECK(res.trend_pass);
    REQUIRE(res.orbits.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& o = res.orbits[k];
        CHECK(o.converged);
        CHECK(o.eps == eps[k]);
        CHECK(std::fabs(o.x1_amplitude - o.eps / 3.0) < 0.2 * o.eps / 3.0);
        if (k > 0) CHECK(o.amplitude < res.orbits[k - 1].amplitude);
    }
}

TEST_CASE("a single eps gives no trend but does not fail") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const std::vector<double> eps{0.1};
    const auto res = continuation(sys, pert, eps, origin());
    CHECK(res.trend_pass);
    CHECK(res.note.find("insufficient") != std::string::npos);
}

TEST_CASE("a trailing zero lands exactly on the null solution") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const std::vector<double> eps{0.1, 0.0};
    const auto res = continuation(sys, pert, eps, origin());
    REQUIRE(res.orbits.size() == 2);
    CHECK(res.orbits[1].eps == 0.0);
    CHECK(res.orbits[1].converged);
    CHECK(res.orbits[1].z_star.norm() == 0.0);
    CHECK(res.orbits[1].amplitude == 0.0);
}

TEST_CASE("bad eps lists are rejected") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const State g = origin();
    CHECK_THROWS_AS(static_cast<void>(continuation(sys, pert, std::vector<double>{}, g)),
                    ConfigError);
    CHECK_THROWS_AS(
        static_cast<void>(continuation(sys, pert, std::vector<double>{0.05, 0.1}, g)),
        ConfigError);
    CHECK_THROWS_AS(
        static_cast<void>(continuation(sys, pert, std::vector<double>{0.1, -0.05}, g)),
        ConfigError);
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

TEST_CASE("csv dump round-trips the sampled orbit") {
    const auto sys = builtin("squares");
    const auto pert = first_axis_forcing(pi);
    const auto orbit = shoot(sys, pert, 0.1, origin());
    REQUIRE(orbit.converged);

    std::ostringstream out;
    write_csv(orbit, out);
    std::istringstream in(out.str());
    std::string line;

    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("# periodic orbit: eps=", 0) == 0);
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,x1,x2,y1,y2,norm");

    REQUIRE(std::getline(in, line));  // t = 0 row
    std::vector<double> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = line.find(',', pos);
        const std::string cell = line.substr(pos, comma - pos);
        fields.push_back(std::strtod(cell.c_str(), nullptr));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    REQUIRE(fields.size() == 6);
    CHECK(fields[0] == 0.0);
    CHECK(fields[1] == orbit.samples[0][0]);  // %.17g keeps doubles exact
    CHECK(fields[4] == orbit.samples[0][3]);

    std::size_t rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == orbit.samples.size());
}
