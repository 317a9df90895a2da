#include "netbandit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "netbandit/errors.hpp"
#include "netbandit/rng.hpp"
#include "netbandit/similarity.hpp"

namespace netbandit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

std::uint64_t hash_double(std::uint64_t h, double d) {
  std::ostringstream ss;
  ss << std::setprecision(17) << d << ';';
  return fnv1a64(ss.str(), h);
}

ordered_json manifest_json(const PreparedDataset& p, const PrepareOptions& o) {
  ordered_json j;
  j["dataset"] = p.name;
  j["content_hash"] = hex64(p.content_hash);
  j["cache_key"] = hex64(p.cache_key);
  j["mcl"] = {{"expansion", o.mcl.expansion},
              {"inflation", o.mcl.inflation},
              {"prune_threshold", o.mcl.prune_threshold},
              {"max_iterations", o.mcl.max_iterations},
              {"convergence_epsilon", o.mcl.convergence_epsilon}};
  j["cmatch"] = {{"gamma_sample_size", o.cmatch.gamma_sample_size},
                 {"gamma_sample_seed", o.cmatch.gamma_sample_seed}};
  j["nodes"] = p.graph.num_nodes();
  j["edges"] = p.graph.num_edges();
  j["clusters"] = p.clustering.num_clusters();
  j["mcl_converged"] = p.clustering.converged;
  j["mcl_iterations"] = p.clustering.iterations;
  j["thresholds"] = {{"gamma", p.cmatch.thresholds.gamma}, {"beta", p.cmatch.thresholds.beta}};
  j["gamma_sample"] = {{"population", p.cmatch.gamma_sample.population},
                       {"requested", p.cmatch.gamma_sample.requested},
                       {"seed", p.cmatch.gamma_sample.seed},
                       {"exhaustive", p.cmatch.gamma_sample.exhaustive}};
  j["matched_node_pairs"] = p.cmatch.matched_node_pairs;
  j["weighted_cluster_pairs"] = p.cmatch.weighted_cluster_pairs;
  j["matched_cluster_pairs"] = p.cmatch.match.num_pairs();
  return j;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw StaleCacheError("corrupt cache file " + path.string() + ": " + e.what());
  }
}

void save_cache(const std::filesystem::path& dir, const PreparedDataset& p,
                const PrepareOptions& o) {
  std::filesystem::create_directories(dir);
  ordered_json clustering = ordered_json::object();
  for (NodeIndex v = 0; v < p.graph.num_nodes(); ++v)
    clustering[p.graph.id(v)] = p.clustering.assignment[v];
  write_json(dir / "clustering.json", clustering);

  ordered_json match = ordered_json::object();
  for (const auto& [a, b] : p.cmatch.match.entries()) match[std::to_string(a)] = b;
  write_json(dir / "match.json", match);

  write_json(dir / "manifest.json", manifest_json(p, o));
}

// Returns false when there is nothing cached yet.
bool load_cache(const std::filesystem::path& dir, PreparedDataset& p, const PrepareOptions& o) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) return false;
  const auto manifest = read_json(manifest_path);
  const auto key = manifest.value("cache_key", std::string{});
  if (key != hex64(p.cache_key)) {
    if (o.recluster) return false;
    throw StaleCacheError("cache " + dir.string() + " was built from different data or parameters (" +
                          key + " != " + hex64(p.cache_key) + "); rerun with --recluster");
  }

  const auto cl = read_json(dir / "clustering.json");
  std::vector<ClusterId> assignment(p.graph.num_nodes());
  std::vector<char> seen(p.graph.num_nodes(), 0);
  for (const auto& [id, c] : cl.items()) {
    auto v = p.graph.find(id);
    if (!v) throw StaleCacheError("cached clustering names unknown node '" + id + "'");
    assignment[*v] = c.get<ClusterId>();
    seen[*v] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw StaleCacheError("cached clustering does not cover every node");
  p.clustering = Clustering::from_assignment(assignment);
  p.clustering.converged = manifest.at("mcl_converged").get<bool>();
  p.clustering.iterations = manifest.at("mcl_iterations").get<int>();
  if (p.clustering.num_clusters() != manifest.at("clusters").get<std::size_t>())
    throw StaleCacheError("cached clustering disagrees with its manifest");

  // Cluster ids are canonical (smallest member first) on both sides, so the
  // stored ids line up with the rebuilt clustering.
  const auto mj = read_json(dir / "match.json");
  for (const auto& [a, b] : mj.items()) {
    const auto ca = static_cast<ClusterId>(std::stoul(a));
    const auto cb = b.get<ClusterId>();
    if (ca < cb) p.cmatch.match.add(ca, cb);
  }
  p.cmatch.thresholds.gamma = manifest.at("thresholds").at("gamma").get<double>();
  p.cmatch.thresholds.beta = manifest.at("thresholds").at("beta").get<double>();
  const auto& gs = manifest.at("gamma_sample");
  p.cmatch.gamma_sample.population = gs.at("population").get<std::size_t>();
  p.cmatch.gamma_sample.requested = gs.at("requested").get<std::size_t>();
  p.cmatch.gamma_sample.seed = gs.at("seed").get<std::uint64_t>();
  p.cmatch.gamma_sample.exhaustive = gs.at("exhaustive").get<bool>();
  p.cmatch.matched_node_pairs = manifest.at("matched_node_pairs").get<std::size_t>();
  p.cmatch.weighted_cluster_pairs = manifest.at("weighted_cluster_pairs").get<std::size_t>();
  p.from_cache = true;
  return true;
}

void build(PreparedDataset& p, const PrepareOptions& o) {
  p.clustering = mcl_cluster(p.graph, o.mcl);
  p.cmatch = run_cmatch(p.graph, p.clustering, o.cmatch);
}

}  // namespace

std::uint64_t cache_key(std::uint64_t content_hash, const PrepareOptions& o) {
  std::uint64_t h = fnv1a64(hex64(content_hash));
  h = fnv1a64(std::to_string(o.mcl.expansion) + ";", h);
  h = hash_double(h, o.mcl.inflation);
  h = hash_double(h, o.mcl.prune_threshold);
  h = fnv1a64(std::to_string(o.mcl.max_iterations) + ";", h);
  h = hash_double(h, o.mcl.convergence_epsilon);
  h = fnv1a64(std::to_string(o.cmatch.gamma_sample_size) + ";", h);
  h = fnv1a64(std::to_string(o.cmatch.gamma_sample_seed) + ";", h);
  return h;
}

PreparedDataset prepare_dataset(const DatasetFiles& files, const PrepareOptions& options) {
  options.mcl.validate();
  auto loaded = load_dataset(files);
  PreparedDataset p;
  p.name = files.name;
  p.graph = compute_spillover_weights(loaded.graph);
  p.load_stats = loaded.stats;
  p.content_hash = dataset_content_hash(files);
  p.cache_key = cache_key(p.content_hash, options);

  if (options.cache_dir.empty()) {
    build(p, options);
    return p;
  }
  const auto dir = options.cache_dir / p.name;
  if (load_cache(dir, p, options)) return p;
  build(p, options);
  save_cache(dir, p, options);
  return p;
}

PreparedDataset prepare_graph(std::string name, const AttributedGraph& graph,
                              const PrepareOptions& options) {
  options.mcl.validate();
  PreparedDataset p;
  p.name = std::move(name);
  p.graph = compute_spillover_weights(graph);
  p.cache_key = cache_key(0, options);
  build(p, options);
  return p;
}

}  // namespace netbandit
