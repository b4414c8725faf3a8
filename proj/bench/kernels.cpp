// Serial reference loops against the OpenMP kernels. Both produce identical
// results; these numbers only show what the parallel path buys.
#include <benchmark/benchmark.h>

#include "disi/process.hpp"
#include "disi/sampler.hpp"
#include "disi/toydata.hpp"

using namespace disi;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "omp"); }

void BM_EmpiricalVariance(benchmark::State& st) {
    const ToyDataset d = make_scurve_dataset(2000, 0.05, 0.5, 0.1, 1);
    const GvpSchedule s(d.rho_hat, 1.0);
    for (auto _ : st) {
        benchmark::DoNotOptimize(empirical_variance(s, d.pairs, 0.1, 0.7, 200000, 3, exec_of(st)));
    }
    label(st);
}

void BM_EnergyDistance(benchmark::State& st) {
    const Cloud a = make_scurve(2000, 0.05, 1), b = make_scurve(2000, 0.05, 2);
    for (auto _ : st) benchmark::DoNotOptimize(energy_distance(a, b, exec_of(st)));
    label(st);
}

void BM_RestoreBatch(benchmark::State& st) {
    const ToyDataset d = make_gaussian_pairs(0.5, 2000, 1.0, 3, 2);
    const GvpSchedule s(d.rho_hat, 1.0);
    const GaussianOracle o({d.rho_hat, 1.0});
    const SamplerConfig cfg{Trajectory(Elliptical{kPi / 8}, s.phi()), 50, 0.2, 1e-3, 4};
    const Cloud x1s = d.degraded();
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            restore_batch(s, [&](std::size_t) -> const Denoiser& { return o; }, x1s, cfg, exec_of(st)));
    }
    label(st);
}

}  // namespace

BENCHMARK(BM_EmpiricalVariance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RestoreBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
