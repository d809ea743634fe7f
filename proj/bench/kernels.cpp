#include <benchmark/benchmark.h>

#include "abloc/enumerate.hpp"
#include "abloc/io.hpp"

using namespace abloc;

namespace {

// Hom sets of growing size: |Hom((Z/2)^r, (Z/2)^r)| = 2^(r*r).
AbGroup elementary(int r)
{
    return AbGroup({}, 0, std::vector<PrimaryCyclic>(static_cast<std::size_t>(r), PrimaryCyclic{2, 1}));
}

void BM_EnumerateHomsSerial(benchmark::State& state)
{
    const AbGroup g = elementary(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_homs_serial(g, g));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (state.range(0) * state.range(0))));
}

void BM_EnumerateHomsParallel(benchmark::State& state)
{
    const AbGroup g = elementary(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_homs(g, g));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (state.range(0) * state.range(0))));
}

/// Candidate roots of (delta_0, 2) with values {-1, 0, 1} on `points` points.
std::vector<Rational> window(std::int64_t points)
{
    auto all = rational_grid(-4, 4, 2);
    const auto drop = (static_cast<std::int64_t>(all.size()) - points) / 2;
    return {all.begin() + drop, all.begin() + drop + points};
}

void BM_GridSearchSerial(benchmark::State& state)
{
    const auto points = window(state.range(0));
    const PElem target{BoundedFn::delta(0), 2};
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_root_search_serial(target, 2, 1, points, {-1, 0, 1}));
}

void BM_GridSearchParallel(benchmark::State& state)
{
    const auto points = window(state.range(0));
    const PElem target{BoundedFn::delta(0), 2};
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_root_search(target, 2, 1, points, {-1, 0, 1}));
}

}  // namespace

BENCHMARK(BM_EnumerateHomsSerial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateHomsParallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchSerial)->DenseRange(5, 9, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchParallel)->DenseRange(5, 9, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
