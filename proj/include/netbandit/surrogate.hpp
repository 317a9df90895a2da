#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netbandit/dataset.hpp"

namespace netbandit {

/// Shape of a synthetic citation dataset in the LINQS file format.
///
/// Nodes are grouped into classes and, inside a class, into small communities
/// that share a pool of theme words. Edges are mostly within community or
/// class, so linked pairs are more similar than random pairs.
struct SurrogateSpec {
  std::string name;
  std::size_t edges = 0;
  std::size_t dimension = 0;
  std::vector<std::string> class_names;
  std::vector<double> class_weights;
  /// One entry per output file pair: (file stem, node count).
  std::vector<std::pair<std::string, std::size_t>> components;
  double words_per_node = 18;
  double community_size = 5;
  double theme_share = 0.3;          // share of a node's words drawn from its community theme
  double island_fraction = 0;        // small communities left disconnected from the rest
  double isolated_fraction = 0;      // nodes with no edges at all
  double activity_exponent = 2.2;    // Pareto tail of per-node edge activity
  double activity_cap = 150;
  double reverse_duplicate_fraction = 0.025;
  std::size_t unknown_cites = 0;    // cites lines naming ids missing from content
  enum class IdStyle { Numeric, Slug, Url } ids = IdStyle::Numeric;

  std::size_t num_nodes() const;
};

/// `cora`, `citeseer` or `webkb`; throws ConfigError otherwise.
SurrogateSpec surrogate_preset(std::string_view name);

struct SurrogateData {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint32_t>> attributes;  // sorted positions of ones
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (cited, citing)
  std::vector<std::uint32_t> component;
};

SurrogateData generate_surrogate(const SurrogateSpec& spec, std::uint64_t seed);

/// Writes `<dir>/<stem>.content` and `<dir>/<stem>.cites` for every component
/// and returns the file set.
DatasetFiles write_surrogate_dataset(const SurrogateSpec& spec, std::uint64_t seed,
                                     const std::filesystem::path& dir);

}  // namespace netbandit
