#include "netbandit/similarity.hpp"

#include <cmath>

#include "netbandit/errors.hpp"

namespace netbandit {

double cosine_similarity(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  NETBANDIT_REQUIRE(x.size() == y.size(), "cosine_similarity: dimension mismatch");
  std::size_t dot = 0, nx = 0, ny = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const bool a = x[k] != 0, b = y[k] != 0;
    dot += a && b;
    nx += a;
    ny += b;
  }
  if (nx == 0 || ny == 0) return 0.0;
  return static_cast<double>(dot) / std::sqrt(static_cast<double>(nx) * static_cast<double>(ny));
}

double cosine_similarity(const BinaryVector& x, const BinaryVector& y) {
  NETBANDIT_REQUIRE(x.dimension == y.dimension, "cosine_similarity: dimension mismatch");
  if (x.ones.empty() || y.ones.empty()) return 0.0;
  std::size_t dot = 0;
  auto i = x.ones.begin(), j = y.ones.begin();
  while (i != x.ones.end() && j != y.ones.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++dot;
      ++i;
      ++j;
    }
  }
  const double s = static_cast<double>(dot) /
                   std::sqrt(static_cast<double>(x.ones.size()) * static_cast<double>(y.ones.size()));
  // sqrt rounding can push identical vectors a hair above 1.
  return s > 1.0 ? 1.0 : s;
}

std::vector<double> edge_similarities(const AttributedGraph& graph) {
  const auto edges = graph.edges();
  std::vector<double> out(edges.size());
  const auto m = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < m; ++k) {
    out[k] = node_similarity(graph, edges[k].u, edges[k].v);
  }
  return out;
}

std::vector<double> edge_similarities_serial(const AttributedGraph& graph) {
  std::vector<double> out;
  out.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) out.push_back(node_similarity(graph, e.u, e.v));
  return out;
}

AttributedGraph compute_spillover_weights(const AttributedGraph& graph) {
  const auto w = edge_similarities(graph);
  return graph.with_spillover(w);
}

}  // namespace netbandit
