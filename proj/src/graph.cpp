#include "netbandit/graph.hpp"

#include <algorithm>

#include "netbandit/errors.hpp"

namespace netbandit {

AttributedGraph::AttributedGraph(std::vector<std::string> ids, std::vector<std::string> labels,
                                 std::size_t dimension,
                                 std::vector<std::vector<std::uint32_t>> attributes,
                                 std::vector<Edge> edges)
    : ids_(std::move(ids)), labels_(std::move(labels)), dimension_(dimension) {
  const std::size_t n = ids_.size();
  if (dimension_ == 0) throw FormatError("attribute dimension must be at least 1");
  if (labels_.empty()) labels_.resize(n);
  if (labels_.size() != n || attributes.size() != n)
    throw FormatError("ids, labels and attribute vectors must have the same length");

  index_of_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_of_.emplace(ids_[i], static_cast<NodeIndex>(i)).second)
      throw FormatError("duplicate node id '" + ids_[i] + "'");
  }

  attr_ones_.reserve(n * 8);
  attr_offsets_.reserve(n + 1);
  for (auto& row : attributes) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw FormatError("attribute vector lists a position twice");
    if (!row.empty() && row.back() >= dimension_)
      throw FormatError("attribute position out of range");
    attr_ones_.insert(attr_ones_.end(), row.begin(), row.end());
    attr_offsets_.push_back(attr_ones_.size());
  }

  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw FormatError("edge endpoint out of range");
    if (e.u == e.v) throw FormatError("self-loop on node '" + ids_[e.u] + "'");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!(e.spillover >= 0.0 && e.spillover <= 1.0))
      throw FormatError("edge spillover probability outside [0,1]");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw FormatError("duplicate edge " + ids_[edges[i].u] + " -- " + ids_[edges[i].v]);
  }
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  adj_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adj_offsets_[i + 1] = adj_offsets_[i] + deg[i];
  adjacency_.resize(adj_offsets_[n]);
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (std::uint32_t k = 0; k < edges_.size(); ++k) {
    adjacency_[cursor[edges_[k].u]++] = {edges_[k].v, k};
    adjacency_[cursor[edges_[k].v]++] = {edges_[k].u, k};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + adj_offsets_[i], adjacency_.begin() + adj_offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

std::optional<NodeIndex> AttributedGraph::find(const std::string& id) const {
  auto it = index_of_.find(id);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

BinaryVector AttributedGraph::attributes(NodeIndex v) const {
  return {{attr_ones_.data() + attr_offsets_[v], attr_offsets_[v + 1] - attr_offsets_[v]},
          dimension_};
}

AttributedGraph AttributedGraph::with_spillover(std::span<const double> weights) const {
  NETBANDIT_REQUIRE(weights.size() == edges_.size(), "with_spillover: one weight per edge");
  AttributedGraph out = *this;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0 && weights[k] <= 1.0))
      throw FormatError("edge spillover probability outside [0,1]");
    out.edges_[k].spillover = weights[k];
  }
  return out;
}

}  // namespace netbandit
