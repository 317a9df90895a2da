#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "netbandit/graph.hpp"
#include "netbandit/mcl.hpp"

namespace nbtest {

using netbandit::AttributedGraph;
using netbandit::Edge;
using netbandit::NodeIndex;

struct WeightedEdge {
  NodeIndex u, v;
  double p;
};

/// Graph with ids "n0".."n{n-1}", one attribute per node (all distinct), and
/// the given spillover probabilities.
inline AttributedGraph make_graph(std::size_t n, std::initializer_list<WeightedEdge> edges,
                                  std::size_t dimension = 0) {
  std::vector<std::string> ids, labels;
  std::vector<std::vector<std::uint32_t>> attrs;
  if (dimension == 0) dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("n" + std::to_string(i));
    labels.push_back("x");
    attrs.push_back({static_cast<std::uint32_t>(i % dimension)});
  }
  std::vector<Edge> es;
  for (const auto& e : edges) es.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.p});
  return AttributedGraph(ids, labels, dimension, attrs, es);
}

inline AttributedGraph make_graph(std::size_t n, const std::vector<std::vector<std::uint32_t>>& attrs,
                                  std::size_t dimension,
                                  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges) {
  std::vector<std::string> ids, labels;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("n" + std::to_string(i));
    labels.push_back("x");
  }
  std::vector<Edge> es;
  for (const auto& [a, b] : edges) es.push_back({std::min(a, b), std::max(a, b), 0.0});
  return AttributedGraph(ids, labels, dimension, attrs, es);
}

/// Fresh, empty scratch directory under the test binary's tmp area.
inline std::filesystem::path scratch(const std::string& name) {
#ifdef NB_TEST_TMP
  const std::filesystem::path base = NB_TEST_TMP;
#else
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "netbandit-tests";
#endif
  const auto dir = base / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace nbtest
