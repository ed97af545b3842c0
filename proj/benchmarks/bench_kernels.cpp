#include <benchmark/benchmark.h>

#include <random>

#include "pprei/pprei.hpp"

namespace {

using namespace pprei;

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t u = 1; u < n; ++u) {
    edges.push_back({static_cast<NodeId>(rng() % u), static_cast<NodeId>(u)});
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return Graph::from_edges(n, edges);
}

void BM_TruncatedPpr(benchmark::State& state) {
  const Graph g = random_graph(state.range(0), 0.05, 1);
  const auto cfg = ProximityConfig::constant(0.7, 10);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_ppr(g, cfg));
}
BENCHMARK(BM_TruncatedPpr)->Arg(100)->Arg(400);

void BM_ForwardAndGradient(benchmark::State& state) {
  const auto n = state.range(0);
  const Graph g = random_graph(n, 0.05, 2);
  const auto form = ForwardForm::standard(0.7, 1e-7, 10);
  const DenseMatrix target = forward_proximity(g.adjacency(), form).output;
  const DenseMatrix b = shifted_logistic(DenseMatrix::Zero(n, n),
                                         volume_shift(DenseMatrix::Zero(n, n), g.volume(), 10));
  for (auto _ : state) {
    const ForwardPass pass = forward_proximity(b, form);
    benchmark::DoNotOptimize(gradient(pass, b, target, form));
  }
}
BENCHMARK(BM_ForwardAndGradient)->Arg(100)->Arg(400);

void BM_RandomizedSvd(benchmark::State& state) {
  const Graph g = random_graph(400, 0.05, 3);
  const DenseMatrix m = truncated_ppr(g, ProximityConfig::constant(0.7, 10));
  for (auto _ : state) benchmark::DoNotOptimize(randomized_svd(m, state.range(0), 7));
}
BENCHMARK(BM_RandomizedSvd)->Arg(16)->Arg(128);

void BM_AllPairsDistances(benchmark::State& state) {
  const Graph g = random_graph(state.range(0), 0.02, 4);
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_distances(g));
}
BENCHMARK(BM_AllPairsDistances)->Arg(400)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
