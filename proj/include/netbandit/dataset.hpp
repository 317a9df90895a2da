#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "netbandit/graph.hpp"

namespace netbandit {

struct LoadStats {
  std::size_t content_lines = 0;
  std::size_t cites_lines = 0;
  std::size_t unknown_endpoint_lines = 0;  // cites lines naming an id absent from content
  std::size_t self_loop_lines = 0;
  std::size_t duplicate_lines = 0;  // repeats, including the reverse direction
};

struct LoadedDataset {
  AttributedGraph graph;
  LoadStats stats;
};

/// Accumulates Planetoid/LINQS style `.content` and `.cites` files.
///
/// Content lines are `<id> <attr_1> ... <attr_d> <label>` with 0/1 attributes;
/// cites lines are `<cited_id> <citing_id>`. Several content/cites pairs can be
/// added (WebKB ships one pair per university). Cites are read after all
/// content so that ids resolve regardless of file order.
class CitationLoader {
 public:
  void add_content(std::istream& in, const std::string& source_name = "content");
  void add_cites(std::istream& in, const std::string& source_name = "cites");

  /// Builds the undirected, deduplicated graph. Spillover weights are zero.
  LoadedDataset finish();

 private:
  struct PendingCite {
    std::string a, b;
  };
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::uint32_t>> attributes_;
  std::size_t dimension_ = 0;
  std::vector<PendingCite> cites_;
  LoadStats stats_;
};

LoadedDataset load_citation_dataset(std::istream& content, std::istream& cites);

struct DatasetFiles {
  std::string name;
  std::vector<std::filesystem::path> content;
  std::vector<std::filesystem::path> cites;
};

/// Dataset root from NETBANDIT_DATA_ROOT, falling back to ./data.
std::filesystem::path default_data_root();

/// Resolves `name` to its files: `<root>/<name>/` if it exists, else `name`
/// itself as a directory path. Inside the directory `<name>.content` and
/// `<name>.cites` are preferred, else every `X.content` with a sibling
/// `X.cites` is used in lexicographic order.
DatasetFiles locate_dataset(const std::filesystem::path& root, const std::string& name);

LoadedDataset load_dataset(const DatasetFiles& files);

/// Content hash over every file's bytes, in order.
std::uint64_t dataset_content_hash(const DatasetFiles& files);

}  // namespace netbandit
