#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "geomca/disjoint_set.hpp"
#include "geomca/epsgraph.hpp"
#include "geomca/pointset.hpp"
#include "geomca/sparsify.hpp"

namespace {

geomca::PointSet gaussian(std::size_t n, std::size_t dim, std::uint64_t seed,
                          geomca::SetLabel label) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> coords(n * dim);
    for (double& x : coords) x = normal(rng);
    return geomca::PointSet(std::move(coords), dim, label);
}

void BM_GraphBuild(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dim = static_cast<std::size_t>(state.range(1));
    const auto r = gaussian(n, dim, 1, geomca::SetLabel::Reference);
    const auto e = gaussian(n, dim, 2, geomca::SetLabel::Evaluation);
    const double eps = dim >= 64 ? 13.0 : 3.0;
    for (auto _ : state) {
        auto g = geomca::build_epsilon_graph(r, e, eps, {});
        benchmark::DoNotOptimize(g.num_components());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(4 * n * n / 2));
}
BENCHMARK(BM_GraphBuild)->Args({1000, 12})->Args({2000, 128})->Unit(benchmark::kMillisecond);

void BM_Sparsify(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto w = gaussian(n, 16, 3, geomca::SetLabel::Reference);
    for (auto _ : state) {
        auto res = geomca::sparsify(w, 3.0, {});
        benchmark::DoNotOptimize(res.kept.size());
    }
}
BENCHMARK(BM_Sparsify)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_UnionFind(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs(2 * n);
    for (auto& p : pairs) p = {pick(rng), pick(rng)};
    for (auto _ : state) {
        geomca::DisjointSet dsu(n);
        for (const auto& [a, b] : pairs) dsu.unite(a, b);
        benchmark::DoNotOptimize(dsu.find(0));
    }
}
BENCHMARK(BM_UnionFind)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
