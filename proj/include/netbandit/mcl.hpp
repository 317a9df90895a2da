#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netbandit/graph.hpp"

namespace netbandit {

using ClusterId = std::uint32_t;

/// Partition of the node set. Cluster ids are contiguous from 0 and ordered
/// by their smallest member.
struct Clustering {
  std::vector<ClusterId> assignment;             // node -> cluster
  std::vector<std::vector<NodeIndex>> clusters;  // cluster -> sorted members
  bool converged = true;
  int iterations = 0;

  std::size_t num_clusters() const { return clusters.size(); }
  ClusterId cluster_of(NodeIndex v) const { return assignment[v]; }

  /// Builds the member lists from an assignment and renumbers the clusters
  /// canonically (by smallest member).
  static Clustering from_assignment(const std::vector<ClusterId>& assignment);
};

/// True iff `clustering` is a total, disjoint cover of the graph's nodes with
/// contiguous ids and an assignment consistent with the member lists.
bool validate_partition(const Clustering& clustering, const AttributedGraph& graph);

struct MclParams {
  int expansion = 2;
  double inflation = 2.0;
  double prune_threshold = 1e-5;
  int max_iterations = 100;
  double convergence_epsilon = 1e-6;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  bool operator==(const MclParams&) const = default;
};

/// Unweighted Markov clustering.
///
/// The adjacency (edge weights ignored) plus unit self-loops is made column
/// stochastic, then expansion (matrix power), inflation (entrywise power and
/// renormalisation) and pruning repeat until the largest entry change is below
/// `convergence_epsilon` or `max_iterations` is reached; in the latter case the
/// partition of the final iterate is returned with `converged == false`.
///
/// Clusters are read off attractor systems: rows with a positive diagonal,
/// grouped when they reach each other. A node attracted by several systems
/// joins the one with the smallest attractor. Expansion runs in parallel over
/// columns.
Clustering mcl_cluster(const AttributedGraph& graph, const MclParams& params = {});

/// Single-threaded reference implementation of mcl_cluster.
Clustering mcl_cluster_serial(const AttributedGraph& graph, const MclParams& params = {});

}  // namespace netbandit
