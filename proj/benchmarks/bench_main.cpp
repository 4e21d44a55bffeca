#include <benchmark/benchmark.h>

#include "ksrad/elliptic.hpp"
#include "ksrad/evolution.hpp"
#include "ksrad/initial_data.hpp"

using namespace ksrad;

static void BM_EllipticSolve(benchmark::State& state) {
    const RadialGrid g = build_grid(3, 1.0, static_cast<int>(state.range(0)));
    const EllipticSystem sys(g);
    const RadialField u = make_initial_data({InitialDataKind::poly_bump, 1.0, 0, 0.1}, g);
    for (auto _ : state) {
        RadialField v = sys.solve(u);
        benchmark::DoNotOptimize(v.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EllipticSolve)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_EllipticAssembly(benchmark::State& state) {
    const RadialGrid g = build_grid(3, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        EllipticSystem sys(g);
        benchmark::DoNotOptimize(sys.diag().data());
    }
}
BENCHMARK(BM_EllipticAssembly)->Arg(256)->Arg(1024);

static void BM_HeunStep(benchmark::State& state) {
    const RadialGrid g = build_grid(3, 1.0, static_cast<int>(state.range(0)));
    const EllipticSystem sys(g);
    ModelParams p;
    p.dim = 3;
    p.mu = 1.5;
    p.kappa = 0.3;
    p.eps = 0.01;
    const RadialField u0 = make_initial_data({InitialDataKind::poly_bump, 2.0, 0, 0.1}, g);
    SimState s = make_state(u0, g);
    const double dt = 0.5 * stable_dt(s, p, g);
    for (auto _ : state) {
        SimState local = s; // step from a fixed state
        step(local, p, g, dt, sys);
        benchmark::DoNotOptimize(local.u.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeunStep)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

static void BM_GradQFunctional(benchmark::State& state) {
    const RadialGrid g = build_grid(3, 1.0, static_cast<int>(state.range(0)));
    const RadialField u = make_initial_data({InitialDataKind::gaussian_bump, 2.0, 0.3, 0.1}, g);
    for (auto _ : state) {
        const double v = grad_q_functional(u, g, 4.0, 0.5);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_GradQFunctional)->Arg(256)->Arg(2048);

static void BM_Quadrature(benchmark::State& state) {
    const RadialGrid g = build_grid(3, 1.0, static_cast<int>(state.range(0)));
    const RadialField u = make_initial_data({InitialDataKind::poly_bump, 1.0, 0, 0.1}, g);
    for (auto _ : state) {
        const double v = integrate(u, g);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_Quadrature)->Arg(256)->Arg(2048);

BENCHMARK_MAIN();
