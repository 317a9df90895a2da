#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "netbandit/cmatch.hpp"
#include "netbandit/dataset.hpp"
#include "netbandit/designs.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/mcl.hpp"

namespace netbandit {

struct PrepareOptions {
  MclParams mcl;
  CMatchParams cmatch;
  std::filesystem::path cache_dir;  // empty disables caching
  bool recluster = false;           // overwrite a cache built from other inputs
};

/// Everything the designs share for one dataset: the weighted graph, its
/// clustering and the cluster match map. Built once and reused by every
/// design, alpha and run.
struct PreparedDataset {
  std::string name;
  AttributedGraph graph;  // spillover weights already computed
  LoadStats load_stats;
  Clustering clustering;
  CMatchResult cmatch;
  std::uint64_t content_hash = 0;
  std::uint64_t cache_key = 0;  // content hash + clustering/matching parameters
  bool from_cache = false;

  DesignContext context() const { return {&graph, &clustering, &cmatch.match}; }
};

/// Hash of everything the cached artefacts depend on.
std::uint64_t cache_key(std::uint64_t content_hash, const PrepareOptions& options);

/// Loads `files`, weights edges, then clusters and matches (or reuses the
/// cache under `<cache_dir>/<name>/`). Throws StaleCacheError when the cached
/// manifest disagrees with the inputs, unless `options.recluster`.
PreparedDataset prepare_dataset(const DatasetFiles& files, const PrepareOptions& options);

/// Same pipeline for an in-memory graph, without caching.
PreparedDataset prepare_graph(std::string name, const AttributedGraph& graph,
                              const PrepareOptions& options);

}  // namespace netbandit
