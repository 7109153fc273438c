#include <benchmark/benchmark.h>

#include "gaussens/quadrature.hpp"
#include "gaussens/replica.hpp"
#include "gaussens/rng.hpp"
#include "gaussens/symplectic.hpp"

using namespace gaussens;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

// Reduced state of two modes of a random 3-mode pure state: a 4-D quadrature.
void BM_PurityQuadrature(benchmark::State& state) {
    const Matrix c = covariance_from_symplectic(random_symplectic(3, 0.5, 101)).matrix().topLeftCorner(4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(purity_by_quadrature(c, 1e-7, exec_of(state)).value);
}

void BM_PrefactorMonteCarlo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(prefactor_integral_mc(8, 3, 200000, 9, exec_of(state)).mean);
}

void BM_ReplicaIdentitySweep(benchmark::State& state) {
    const std::vector<double> mu = {1.5, 2.0, 2.5, 3.0, 4.0, 6.0};
    const std::vector<int> xs = {2, 3, 4, 5, 6, 7, 8};
    for (auto _ : state) benchmark::DoNotOptimize(final_identity_check(mu, xs, exec_of(state)));
}

}  // namespace

// Argument 0 runs the serial reference path, 1 the OpenMP path.
BENCHMARK(BM_PurityQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrefactorMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicaIdentitySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
