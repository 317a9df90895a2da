#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netbandit/graph.hpp"
#include "netbandit/mcl.hpp"

namespace netbandit {

struct Thresholds {
  double gamma = 0.0;  // node-matching threshold
  double beta = 0.0;   // cluster-matching threshold
};

struct NodePair {
  NodeIndex a;  // a < b
  NodeIndex b;
  double similarity;
};

/// Cross-cluster node pairs whose similarity strictly exceeds `gamma`.
/// Many-to-many: a node may appear in any number of pairs.
struct NodeMatching {
  std::vector<NodePair> pairs;  // sorted by (a, b)
  double gamma = 0.0;
};

/// Partial involution on cluster ids.
class ClusterMatchMap {
 public:
  /// Records a <-> b. Throws ContractViolation on a self-match or when either
  /// side is already matched.
  void add(ClusterId a, ClusterId b);

  std::optional<ClusterId> mate(ClusterId c) const;
  bool contains(ClusterId c) const { return match_.count(c) != 0; }
  std::size_t num_pairs() const { return match_.size() / 2; }
  bool empty() const { return match_.empty(); }

  /// Each pair once, as (smaller, larger), ascending.
  std::vector<std::pair<ClusterId, ClusterId>> pairs() const;
  const std::map<ClusterId, ClusterId>& entries() const { return match_; }

  bool operator==(const ClusterMatchMap&) const = default;

 private:
  std::map<ClusterId, ClusterId> match_;
};

/// Symmetric cluster-pair weights keyed by (smaller id, larger id).
using ClusterWeights = std::map<std::pair<ClusterId, ClusterId>, double>;

/// Median (second quartile) with linear interpolation between order statistics.
double compute_threshold(std::span<const double> sample);

struct SimilaritySample {
  std::vector<double> values;
  std::size_t population = 0;  // number of distinct cross-cluster pairs
  std::size_t requested = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;  // true when every cross-cluster pair was used
};

/// Similarities of up to `max_pairs` distinct cross-cluster node pairs drawn
/// uniformly without replacement (every pair when the population is smaller).
SimilaritySample sample_cross_cluster_similarities(const AttributedGraph& graph,
                                                   const Clustering& clustering,
                                                   std::size_t max_pairs, std::uint64_t seed);

/// Every cross-cluster pair with similarity > gamma. OpenMP over rows.
NodeMatching match_nodes(const AttributedGraph& graph, const Clustering& clustering, double gamma);

/// Serial reference for match_nodes.
NodeMatching match_nodes_serial(const AttributedGraph& graph, const Clustering& clustering,
                                double gamma);

/// Mean similarity of the matched pairs spanning (ci, cj); 0 when there are none.
double cluster_similarity(ClusterId ci, ClusterId cj, const NodeMatching& matching,
                          const Clustering& clustering);

/// cluster_similarity for every cluster pair with at least one matched pair.
ClusterWeights cluster_weights(const NodeMatching& matching, const Clustering& clustering);

/// Median of the nonzero weights; 0 when none are nonzero.
double cluster_threshold(const ClusterWeights& weights);

/// Greedy one-to-one matching: candidates with weight > beta in descending
/// weight order (ties by ascending id pair), taken when both ends are free.
ClusterMatchMap match_clusters(const Clustering& clustering, const ClusterWeights& weights,
                               double beta);

struct CMatchParams {
  std::size_t gamma_sample_size = 200000;
  std::uint64_t gamma_sample_seed = 0x5eed;
};

struct CMatchResult {
  Thresholds thresholds;
  std::size_t matched_node_pairs = 0;
  std::size_t weighted_cluster_pairs = 0;
  ClusterMatchMap match;
  SimilaritySample gamma_sample;  // values cleared after use; metadata kept
};

/// Full pipeline: gamma from the sample, node matching, cluster weights, beta,
/// cluster matching.
CMatchResult run_cmatch(const AttributedGraph& graph, const Clustering& clustering,
                        const CMatchParams& params = {});

}  // namespace netbandit
