// Serial vs OpenMP kernels.  Arg: number of sources; grid is fixed.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ewald1d/harness.hpp"
#include "ewald1d/kernels.hpp"

using namespace ewald1d;

namespace {

struct Setup {
    DomainConfig cfg;
    std::vector<double> grid;
    std::vector<double> sources;
    std::vector<double> out;

    explicit Setup(int n_sources) : cfg(DomainConfig::scaled(n_sources / 2 > 0 ? n_sources / 2 : 1)) {
        grid = GridSpec{-cfg.half_length, cfg.half_length, 4096}.points();
        std::mt19937_64 rng(1);
        sources.resize(static_cast<std::size_t>(n_sources));
        for (double& s : sources) s = -cfg.half_length + cfg.period() * unit_uniform(rng());
        out.resize(grid.size());
    }
};

template <auto Kernel>
void pairwise(benchmark::State& state) {
    Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Kernel(s.grid, s.sources, s.cfg, s.out);
        benchmark::DoNotOptimize(s.out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.grid.size() * s.sources.size()));
}

template <auto Kernel>
void series(benchmark::State& state) {
    Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Kernel(s.grid, s.sources, FourierTruncation{64}, s.cfg, s.out);
        benchmark::DoNotOptimize(s.out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.grid.size() * s.sources.size()));
}

template <auto Kernel>
void energy(benchmark::State& state) {
    Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.sources, s.cfg));
}

} // namespace

BENCHMARK(pairwise<kernels::serial::pairwise_field>)->Name("pairwise_field/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(pairwise<kernels::omp::pairwise_field>)->Name("pairwise_field/omp")->RangeMultiplier(4)->Range(16, 1024)->UseRealTime();
BENCHMARK(series<kernels::serial::series_field>)->Name("series_field/serial")->RangeMultiplier(4)->Range(16, 64);
BENCHMARK(series<kernels::omp::series_field>)->Name("series_field/omp")->RangeMultiplier(4)->Range(16, 64)->UseRealTime();
BENCHMARK(energy<kernels::serial::pair_potential_energy>)->Name("pair_energy/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(energy<kernels::omp::pair_potential_energy>)->Name("pair_energy/omp")->RangeMultiplier(4)->Range(64, 4096)->UseRealTime();

BENCHMARK_MAIN();
