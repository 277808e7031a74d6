#include <benchmark/benchmark.h>

#include <vector>

#include "rankcp/assignment.hpp"
#include "rankcp/datagen.hpp"
#include "rankcp/grid.hpp"
#include "rankcp/ranks.hpp"
#include "rankcp/rng.hpp"
#include "rankcp/segmentation.hpp"

using namespace rankcp;

namespace {

CostMatrix random_cost(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CostMatrix cost(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost.at(i, j) = rng.next_double();
    return cost;
}

Series two_segment_series(std::size_t half, std::size_t d, std::uint64_t seed) {
    const std::vector<SegmentSpec> specs{
        {half, Family::gaussian, std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)},
        {half, Family::gaussian, std::vector<double>(d, 2.0), std::vector<double>(d, 1.0)},
    };
    return generate_series(specs, seed);
}

void BM_solve_lsap(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const CostMatrix cost = random_cost(n, 17);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lsap(cost).total_cost);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_solve_lsap)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void BM_rank_map(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Series series = two_segment_series(n / 2, 2, 23);
    const UnitGrid grid = halton_grid(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(compute_rank_map(series.view(), grid).perm);
}
BENCHMARK(BM_rank_map)->Arg(128)->Arg(256)->Arg(512);

void BM_best_split(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Series series = two_segment_series(t / 2, 2, 29);
    DetectConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(best_split(series, {0, t}, cfg).q_value);
}
BENCHMARK(BM_best_split)->Arg(100)->Arg(200)->Arg(400);

void BM_divisive_detect(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Series series = two_segment_series(t / 2, 2, 31);
    DetectConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(divisive_detect(series, cfg).change_points.size());
}
BENCHMARK(BM_divisive_detect)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_agglomerative_detect(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Series series = two_segment_series(t / 2, 2, 37);
    DetectConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            agglomerative_detect(series, 10, cfg).first.change_points.size());
}
BENCHMARK(BM_agglomerative_detect)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
