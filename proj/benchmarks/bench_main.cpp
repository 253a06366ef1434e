#include "manigraph/manigraph.hpp"

#include <benchmark/benchmark.h>

using namespace manigraph;

namespace {

void BM_EmbedRing(benchmark::State& state) {
  const Graph g = generate(GraphKind::ring, static_cast<std::size_t>(state.range(0)));
  const SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed(g, 8, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EmbedRing)->RangeMultiplier(3)->Range(3000, 100000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_EmbedMesh(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Graph g = generate(GraphKind::trimesh, side, side);
  const SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed(g, 3, cfg));
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_EmbedMesh)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->Complexity();

void BM_BuildOperator(benchmark::State& state) {
  const Graph g = generate(GraphKind::ring, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_operator_pair(g));
  }
}
BENCHMARK(BM_BuildOperator)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_LobpcgPreconditioner(benchmark::State& state) {
  const OperatorPair op = build_operator_pair(generate(GraphKind::trimesh, 60, 60));
  SolverConfig cfg;
  cfg.k = 4;
  cfg.preconditioner = static_cast<Preconditioner>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lobpcg_smallest(op.a, op.b, cfg));
  }
  state.SetLabel(to_string(cfg.preconditioner));
}
BENCHMARK(BM_LobpcgPreconditioner)
    ->Arg(static_cast<int>(Preconditioner::jacobi))
    ->Arg(static_cast<int>(Preconditioner::ldlt))
    ->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
  const Graph g = generate(GraphKind::trimesh, static_cast<std::size_t>(state.range(0)),
                           static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(betweenness(g));
  }
}
BENCHMARK(BM_Betweenness)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  const Embedding e = embed(generate(GraphKind::trimesh, 60, 60), 4, SolverConfig{});
  KMeansOptions opts;
  opts.restarts = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans(e.coords, static_cast<std::size_t>(state.range(0)), opts));
  }
}
BENCHMARK(BM_KMeans)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
