// Serial reference vs OpenMP kernels on surrogate datasets.
//
//   bench_kernels [--benchmark_filter=...]   (set OMP_NUM_THREADS to vary threads)

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "netbandit/cmatch.hpp"
#include "netbandit/mcl.hpp"
#include "netbandit/similarity.hpp"
#include "netbandit/surrogate.hpp"

using namespace netbandit;

namespace {

const char* const kNames[] = {"webkb", "cora", "citeseer"};

const AttributedGraph& graph(int which) {
  static std::map<int, AttributedGraph> cache;
  auto it = cache.find(which);
  if (it == cache.end()) {
    const auto spec = surrogate_preset(kNames[which]);
    const auto data = generate_surrogate(spec, 1);
    std::vector<Edge> edges;
    for (const auto& [a, b] : data.edges) edges.push_back({std::min(a, b), std::max(a, b), 0.0});
    AttributedGraph g(data.ids, data.labels, spec.dimension, data.attributes, edges);
    it = cache.emplace(which, compute_spillover_weights(g)).first;
  }
  return it->second;
}

const Clustering& clustering(int which) {
  static std::map<int, Clustering> cache;
  auto it = cache.find(which);
  if (it == cache.end()) it = cache.emplace(which, mcl_cluster(graph(which))).first;
  return it->second;
}

template <typename F>
void run(benchmark::State& state, F f) {
  const int which = static_cast<int>(state.range(0));
  state.SetLabel(kNames[which]);
  graph(which);
  for (auto _ : state) benchmark::DoNotOptimize(f(which));
}

void BM_EdgeSimilarity_Serial(benchmark::State& s) {
  run(s, [](int w) { return edge_similarities_serial(graph(w)); });
}
void BM_EdgeSimilarity_OpenMP(benchmark::State& s) {
  run(s, [](int w) { return edge_similarities(graph(w)); });
}
void BM_Mcl_Serial(benchmark::State& s) {
  run(s, [](int w) { return mcl_cluster_serial(graph(w)); });
}
void BM_Mcl_OpenMP(benchmark::State& s) {
  run(s, [](int w) { return mcl_cluster(graph(w)); });
}
void BM_MatchNodes_Serial(benchmark::State& s) {
  run(s, [](int w) { return match_nodes_serial(graph(w), clustering(w), 0.2); });
}
void BM_MatchNodes_OpenMP(benchmark::State& s) {
  run(s, [](int w) { return match_nodes(graph(w), clustering(w), 0.2); });
}

}  // namespace

BENCHMARK(BM_EdgeSimilarity_Serial)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EdgeSimilarity_OpenMP)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Mcl_Serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mcl_OpenMP)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchNodes_Serial)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchNodes_OpenMP)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
