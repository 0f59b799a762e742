// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <cmath>

#include "cantor/dendrite.hpp"
#include "cantor/kernels.hpp"

namespace {

using namespace cantor;

std::vector<Interval> cover_at(int n) {
    return invariant_cover(inverse_branches({5.0}), n).intervals;
}

template <auto Kernel>
void BM_refine_cover(benchmark::State& state) {
    const auto sys = inverse_branches({5.0});
    const auto in = cover_at(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(sys, in));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

template <auto Kernel>
void BM_map_cylinders(benchmark::State& state) {
    const auto h = recode_between(ClopenSet{"0", "10"}, ClopenSet{"00", "011", "1"});
    const auto cyl = ClopenSet{"0", "10"}.refine(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(h.forward, cyl));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cyl.size()));
}

template <auto Kernel>
void BM_max_over(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::function<double(std::size_t)> f = [](std::size_t i) { return std::sin(static_cast<double>(i)); };
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(n, f));
}

template <auto Kernel>
void BM_fiber_census(benchmark::State& state) {
    const DendriteGraph g(static_cast<int>(state.range(0)));
    const int depth = 2 * g.depth() + 4;
    std::vector<std::vector<Rational>> params;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        params.push_back(tour_parameters(g, g.vertex_point(static_cast<int>(v))));
    std::vector<std::uint64_t> cells(std::uint64_t{1} << depth);
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = i;
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(params, cells, depth));
}

} // namespace

BENCHMARK(BM_refine_cover<kernels::serial::refine_cover>)->Arg(10)->Arg(14);
BENCHMARK(BM_refine_cover<kernels::parallel::refine_cover>)->Arg(10)->Arg(14);
BENCHMARK(BM_map_cylinders<kernels::serial::map_cylinders>)->Arg(8)->Arg(12);
BENCHMARK(BM_map_cylinders<kernels::parallel::map_cylinders>)->Arg(8)->Arg(12);
BENCHMARK(BM_max_over<kernels::serial::max_over>)->Arg(1 << 16);
BENCHMARK(BM_max_over<kernels::parallel::max_over>)->Arg(1 << 16);
BENCHMARK(BM_fiber_census<kernels::serial::fiber_census>)->Arg(3)->Arg(4);
BENCHMARK(BM_fiber_census<kernels::parallel::fiber_census>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
