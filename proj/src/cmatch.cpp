#include "netbandit/cmatch.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "netbandit/errors.hpp"
#include "netbandit/rng.hpp"
#include "netbandit/similarity.hpp"

namespace netbandit {

void ClusterMatchMap::add(ClusterId a, ClusterId b) {
  NETBANDIT_REQUIRE(a != b, "ClusterMatchMap: a cluster cannot match itself");
  NETBANDIT_REQUIRE(!contains(a) && !contains(b), "ClusterMatchMap: cluster already matched");
  match_.emplace(a, b);
  match_.emplace(b, a);
}

std::optional<ClusterId> ClusterMatchMap::mate(ClusterId c) const {
  auto it = match_.find(c);
  if (it == match_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<ClusterId, ClusterId>> ClusterMatchMap::pairs() const {
  std::vector<std::pair<ClusterId, ClusterId>> out;
  for (const auto& [a, b] : match_) {
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

double compute_threshold(std::span<const double> sample) {
  NETBANDIT_REQUIRE(!sample.empty(), "compute_threshold: empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  const double pos = 0.5 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= v.size()) return v[lo];
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

SimilaritySample sample_cross_cluster_similarities(const AttributedGraph& graph,
                                                   const Clustering& clustering,
                                                   std::size_t max_pairs, std::uint64_t seed) {
  const std::size_t n = graph.num_nodes();
  SimilaritySample out;
  out.requested = max_pairs;
  out.seed = seed;
  out.population = n * (n - 1) / 2;
  for (const auto& c : clustering.clusters) out.population -= c.size() * (c.size() - 1) / 2;

  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  if (out.population <= max_pairs) {
    out.exhaustive = true;
    pairs.reserve(out.population);
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b = a + 1; b < n; ++b) {
        if (clustering.assignment[a] != clustering.assignment[b]) pairs.emplace_back(a, b);
      }
    }
  } else {
    CounterRng rng(seed);
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(max_pairs * 2);
    pairs.reserve(max_pairs);
    while (pairs.size() < max_pairs) {
      auto a = static_cast<NodeIndex>(rng.below(n));
      auto b = static_cast<NodeIndex>(rng.below(n));
      if (a == b || clustering.assignment[a] == clustering.assignment[b]) continue;
      if (a > b) std::swap(a, b);
      if (!taken.insert((std::uint64_t{a} << 32) | b).second) continue;
      pairs.emplace_back(a, b);
    }
  }

  out.values.resize(pairs.size());
  const auto m = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < m; ++k) {
    out.values[k] = node_similarity(graph, pairs[k].first, pairs[k].second);
  }
  return out;
}

namespace {

void match_row(const AttributedGraph& graph, const Clustering& clustering, double gamma,
               NodeIndex a, std::vector<NodePair>& out) {
  const auto xa = graph.attributes(a);
  if (xa.ones.empty()) return;  // similarity 0 to everything
  for (NodeIndex b = a + 1; b < graph.num_nodes(); ++b) {
    if (clustering.assignment[a] == clustering.assignment[b]) continue;
    const double s = cosine_similarity(xa, graph.attributes(b));
    if (s > gamma) out.push_back({a, b, s});
  }
}

}  // namespace

NodeMatching match_nodes(const AttributedGraph& graph, const Clustering& clustering, double gamma) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<NodePair>> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a) {
    match_row(graph, clustering, gamma, static_cast<NodeIndex>(a), rows[a]);
  }
  NodeMatching out;
  out.gamma = gamma;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  out.pairs.reserve(total);
  for (auto& r : rows) {
    out.pairs.insert(out.pairs.end(), r.begin(), r.end());
    std::vector<NodePair>().swap(r);
  }
  return out;
}

NodeMatching match_nodes_serial(const AttributedGraph& graph, const Clustering& clustering,
                                double gamma) {
  NodeMatching out;
  out.gamma = gamma;
  for (NodeIndex a = 0; a < graph.num_nodes(); ++a) match_row(graph, clustering, gamma, a, out.pairs);
  return out;
}

double cluster_similarity(ClusterId ci, ClusterId cj, const NodeMatching& matching,
                          const Clustering& clustering) {
  NETBANDIT_REQUIRE(ci != cj, "cluster_similarity: clusters must differ");
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& p : matching.pairs) {
    const auto x = clustering.assignment[p.a], y = clustering.assignment[p.b];
    if ((x == ci && y == cj) || (x == cj && y == ci)) {
      sum += p.similarity;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

ClusterWeights cluster_weights(const NodeMatching& matching, const Clustering& clustering) {
  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::unordered_map<std::uint64_t, Acc> acc;
  for (const auto& p : matching.pairs) {
    auto [x, y] = std::minmax(clustering.assignment[p.a], clustering.assignment[p.b]);
    auto& a = acc[(std::uint64_t{x} << 32) | y];
    a.sum += p.similarity;
    ++a.count;
  }
  ClusterWeights out;
  for (const auto& [key, a] : acc) {
    out.emplace(std::pair{static_cast<ClusterId>(key >> 32), static_cast<ClusterId>(key & 0xffffffffu)},
                a.sum / static_cast<double>(a.count));
  }
  return out;
}

double cluster_threshold(const ClusterWeights& weights) {
  std::vector<double> nonzero;
  for (const auto& [k, w] : weights) {
    if (w > 0.0) nonzero.push_back(w);
  }
  if (nonzero.empty()) return 0.0;
  return compute_threshold(nonzero);
}

ClusterMatchMap match_clusters(const Clustering& clustering, const ClusterWeights& weights,
                               double beta) {
  struct Candidate {
    double w;
    ClusterId a, b;
  };
  std::vector<Candidate> cand;
  for (const auto& [key, w] : weights) {
    auto [a, b] = key;
    NETBANDIT_REQUIRE(a < clustering.num_clusters() && b < clustering.num_clusters(),
                      "match_clusters: unknown cluster id");
    if (a == b) continue;
    if (a > b) {
      // Accept either orientation, but both must agree.
      auto mirror = weights.find({b, a});
      NETBANDIT_REQUIRE(mirror == weights.end() || mirror->second == w,
                        "match_clusters: weights are not symmetric");
      if (mirror != weights.end()) continue;
      std::swap(a, b);
    }
    if (w > beta) cand.push_back({w, a, b});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
    if (x.w != y.w) return x.w > y.w;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  ClusterMatchMap out;
  for (const auto& c : cand) {
    if (!out.contains(c.a) && !out.contains(c.b)) out.add(c.a, c.b);
  }
  return out;
}

CMatchResult run_cmatch(const AttributedGraph& graph, const Clustering& clustering,
                        const CMatchParams& params) {
  CMatchResult out;
  out.gamma_sample = sample_cross_cluster_similarities(graph, clustering, params.gamma_sample_size,
                                                       params.gamma_sample_seed);
  // A single cluster leaves no cross-cluster pair and nothing to match.
  if (out.gamma_sample.values.empty()) return out;
  out.thresholds.gamma = compute_threshold(out.gamma_sample.values);
  out.gamma_sample.values.clear();
  out.gamma_sample.values.shrink_to_fit();

  const auto weights = [&] {
    auto matching = match_nodes(graph, clustering, out.thresholds.gamma);
    out.matched_node_pairs = matching.pairs.size();
    return cluster_weights(matching, clustering);
  }();
  out.weighted_cluster_pairs = weights.size();
  out.thresholds.beta = cluster_threshold(weights);
  out.match = match_clusters(clustering, weights, out.thresholds.beta);
  return out;
}

}  // namespace netbandit
