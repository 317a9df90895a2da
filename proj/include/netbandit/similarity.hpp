#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netbandit/graph.hpp"

namespace netbandit {

/// Cosine similarity of two dense 0/1 vectors; 0 when either norm is zero.
/// Throws ContractViolation on a dimension mismatch.
double cosine_similarity(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Same quantity for the sparse representation: |x & y| / sqrt(|x| |y|).
double cosine_similarity(const BinaryVector& x, const BinaryVector& y);

/// Cosine similarity of two nodes' attribute vectors.
inline double node_similarity(const AttributedGraph& g, NodeIndex a, NodeIndex b) {
  return cosine_similarity(g.attributes(a), g.attributes(b));
}

/// Per-edge cosine similarities, in edges() order. OpenMP over edges.
std::vector<double> edge_similarities(const AttributedGraph& graph);

/// Serial reference for edge_similarities.
std::vector<double> edge_similarities_serial(const AttributedGraph& graph);

/// Returns a copy of `graph` whose edge spillover probabilities are the
/// attribute cosine similarity of their endpoints. Idempotent.
AttributedGraph compute_spillover_weights(const AttributedGraph& graph);

}  // namespace netbandit
