#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netbandit {

using NodeIndex = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeIndex u;
  NodeIndex v;
  double spillover = 0.0;  // e.p: probability of cross-arm contagion along this edge
};

struct Neighbor {
  NodeIndex node;
  std::uint32_t edge;  // index into AttributedGraph::edges()
};

/// Binary attribute vector stored as the sorted positions of its ones.
struct BinaryVector {
  std::span<const std::uint32_t> ones;
  std::size_t dimension = 0;
};

/// Immutable attributed graph: nodes with binary attribute vectors, undirected
/// simple edges, and a spillover probability per edge.
///
/// Node indices are dense in [0, num_nodes()) and follow the order in which the
/// nodes were supplied. Adjacency lists are sorted by neighbor index.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  /// Validates and builds. `attributes[i]` lists the positions of node i's ones
  /// (any order, no duplicates). Edges must be distinct, non-self-loop pairs
  /// of known nodes; each is stored with u < v.
  AttributedGraph(std::vector<std::string> ids, std::vector<std::string> labels,
                  std::size_t dimension, std::vector<std::vector<std::uint32_t>> attributes,
                  std::vector<Edge> edges);

  std::size_t num_nodes() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t dimension() const { return dimension_; }

  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const std::string& label(NodeIndex v) const { return labels_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Looks up a node by its external identifier.
  std::optional<NodeIndex> find(const std::string& id) const;

  BinaryVector attributes(NodeIndex v) const;

  std::span<const Neighbor> neighbors(NodeIndex v) const {
    return {adjacency_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
  }
  std::size_t degree(NodeIndex v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }

  std::span<const Edge> edges() const { return edges_; }
  double spillover(const Neighbor& n) const { return edges_[n.edge].spillover; }

  /// Copy of this graph with the given per-edge spillover probabilities.
  AttributedGraph with_spillover(std::span<const double> weights) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_of_;
  std::size_t dimension_ = 0;
  std::vector<std::size_t> attr_offsets_{0};
  std::vector<std::uint32_t> attr_ones_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_{0};
  std::vector<Neighbor> adjacency_;
};

}  // namespace netbandit
