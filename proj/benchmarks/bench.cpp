// Microbenchmarks for the hot paths: expression evaluation, vector-field
// assembly, V-dot evaluation, adaptive integration, constraint-set root
// isolation, and one period-map evaluation (the inner cost of a shooting
// iteration). Build Release and run ./build/benchmarks/bench.

#include "lienard/expr.hpp"
#include "lienard/hypotheses.hpp"
#include "lienard/integrate.hpp"
#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"
#include "lienard/periodic.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace lienard;

namespace {

void expression_eval(benchmark::State& state) {
    const Expression f = parse("(x1^2 + 2*x2^2 - 1)^2");
    const std::vector<double> x{0.3, -0.7}, y{0.1, 0.2};
    const EvalContext ctx{x, y};
    for (auto _ : state) benchmark::DoNotOptimize(f.eval(ctx));
}
BENCHMARK(expression_eval);

void expression_derivative_eval(benchmark::State& state) {
    const Expression df = parse("(x1^2 + 2*x2^2 - 1)^2").differentiate(VarKind::X, 0);
    const std::vector<double> x{0.3, -0.7}, y{0.1, 0.2};
    const EvalContext ctx{x, y};
    for (auto _ : state) benchmark::DoNotOptimize(df.eval(ctx));
}
BENCHMARK(expression_derivative_eval);

void vector_field(benchmark::State& state) {
    const auto sys = builtin("squares");
    const double z[4] = {0.3, -0.4, 0.2, -0.1};
    double dz[4];
    for (auto _ : state) {
        vector_field_flat(sys, z, dz);
        benchmark::DoNotOptimize(dz[0]);
    }
}
BENCHMARK(vector_field);

void lyapunov_vdot(benchmark::State& state) {
    const auto sys = builtin("squares");
    const LyapunovData ld(sys);
    const double z[4] = {0.3, -0.4, 0.2, -0.1};
    for (auto _ : state) benchmark::DoNotOptimize(ld.Vdot_flat(z));
}
BENCHMARK(lyapunov_vdot);

void integrate_to_10(benchmark::State& state) {
    const auto sys = builtin("squares");
    const State z0{{0.5, 0.5}, {0.0, 0.0}};
    IntegrateOptions opts;
    opts.convergence_radius = 0.0;
    opts.record_dense = false;
    for (auto _ : state) {
        const Trajectory traj = integrate(sys, z0, 0.0, 10.0, opts);
        benchmark::DoNotOptimize(traj.t.size());
    }
}
BENCHMARK(integrate_to_10);

void constraint_solve_full_mask(benchmark::State& state) {
    const auto sys = builtin("squares");
    for (auto _ : state) {
        const RootFinding rf = solve_constraint_set(sys, 0u, sys.omega_box);
        benchmark::DoNotOptimize(rf.roots.size());
    }
}
BENCHMARK(constraint_solve_full_mask);

void period_map_eval(benchmark::State& state) {
    const auto sys = builtin("squares");
    const std::vector<double> amplitudes{1.0, 0.0};
    const Perturbation pert = make_cosine_perturbation(2, 3.141592653589793, amplitudes);
    const State z0 = State::zero(2);
    for (auto _ : state) {
        const State zT = period_map(sys, pert, 0.1, z0);
        benchmark::DoNotOptimize(zT.x[0]);
    }
}
BENCHMARK(period_map_eval);

}  // namespace

BENCHMARK_MAIN();
