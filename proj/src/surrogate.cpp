#include "netbandit/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "netbandit/errors.hpp"
#include "netbandit/rng.hpp"

namespace netbandit {

std::size_t SurrogateSpec::num_nodes() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.second;
  return n;
}

SurrogateSpec surrogate_preset(std::string_view name) {
  SurrogateSpec s;
  s.name = std::string(name);
  if (name == "cora") {
    s.edges = 5278;
    s.dimension = 1433;
    s.class_names = {"Case_Based", "Genetic_Algorithms", "Neural_Networks", "Probabilistic_Methods",
                     "Reinforcement_Learning", "Rule_Learning", "Theory"};
    s.class_weights = {298, 418, 818, 426, 217, 180, 351};
    s.components = {{"cora", 2708}};
    s.words_per_node = 18;
    s.island_fraction = 0.06;
  } else if (name == "citeseer") {
    s.edges = 4732;
    s.dimension = 3703;
    s.class_names = {"Agents", "AI", "DB", "IR", "ML", "HCI"};
    s.class_weights = {596, 249, 701, 668, 590, 508};
    s.components = {{"citeseer", 3312}};
    s.words_per_node = 32;
    s.island_fraction = 0.45;
    s.isolated_fraction = 0.015;
    s.unknown_cites = 17;
    s.ids = SurrogateSpec::IdStyle::Slug;
  } else if (name == "webkb") {
    s.edges = 1608;
    s.dimension = 1702;
    s.class_names = {"course", "faculty", "student", "project", "staff"};
    s.class_weights = {0.2, 0.15, 0.5, 0.1, 0.05};
    s.components = {{"cornell", 195}, {"texas", 187}, {"washington", 230}, {"wisconsin", 265}};
    s.words_per_node = 30;
    s.community_size = 7;
    s.activity_exponent = 2.0;
    s.activity_cap = 80;
    s.ids = SurrogateSpec::IdStyle::Url;
  } else {
    throw ConfigError("unknown surrogate preset '" + std::string(name) + "' (cora, citeseer, webkb)");
  }
  return s;
}

namespace {

/// Zipf(1) over an ordered word list.
class ZipfPool {
 public:
  explicit ZipfPool(std::vector<std::uint32_t> words) : words_(std::move(words)) {
    cdf_.reserve(words_.size());
    double acc = 0;
    for (std::size_t r = 0; r < words_.size(); ++r) cdf_.push_back(acc += 1.0 / static_cast<double>(r + 1));
  }
  std::uint32_t draw(CounterRng& rng) const {
    const double u = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return words_[std::min<std::size_t>(it - cdf_.begin(), words_.size() - 1)];
  }

 private:
  std::vector<std::uint32_t> words_;
  std::vector<double> cdf_;
};

std::string letters(CounterRng& rng, std::size_t lo, std::size_t hi) {
  const std::size_t len = lo + rng.below(hi - lo + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(26));
  return s;
}

std::vector<std::string> make_ids(const SurrogateSpec& spec, const std::vector<std::uint32_t>& component,
                                  CounterRng& rng) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> ids;
  ids.reserve(component.size());
  for (std::uint32_t c : component) {
    std::string id;
    do {
      switch (spec.ids) {
        case SurrogateSpec::IdStyle::Numeric:
          id = std::to_string(1 + rng.below(1200000));
          break;
        case SurrogateSpec::IdStyle::Slug:
          id = letters(rng, 4, 8) + std::to_string(90 + rng.below(10)) + letters(rng, 4, 10);
          break;
        case SurrogateSpec::IdStyle::Url:
          id = "http://www.cs." + spec.components[c].first + ".edu/~" + letters(rng, 3, 8) + "/" +
               letters(rng, 0, 6);
          break;
      }
    } while (!seen.insert(id).second);
    ids.push_back(std::move(id));
  }
  return ids;
}

}  // namespace

SurrogateData generate_surrogate(const SurrogateSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.num_nodes();
  const std::size_t k = spec.class_names.size();
  if (n < 2 || k == 0 || spec.class_weights.size() != k || spec.dimension < k)
    throw ConfigError("surrogate spec is malformed");
  CounterRng rng(derive_seed(seed, "surrogate-structure"));
  CounterRng words_rng(derive_seed(seed, "surrogate-words"));

  // Vocabulary: one global Zipf pool plus a contiguous block per class.
  std::vector<std::uint32_t> vocab(spec.dimension);
  std::iota(vocab.begin(), vocab.end(), 0u);
  words_rng.shuffle(std::span(vocab));
  const ZipfPool global(vocab);
  std::vector<std::uint32_t> block_order(vocab);
  words_rng.shuffle(std::span(block_order));
  std::vector<ZipfPool> class_pool;
  const std::size_t block = spec.dimension / k;
  for (std::size_t c = 0; c < k; ++c)
    class_pool.emplace_back(std::vector<std::uint32_t>(block_order.begin() + c * block,
                                                       block_order.begin() + (c + 1) * block));

  // Nodes in structured order: component, class, community. Island
  // communities get no edges beyond their own spanning tree.
  std::vector<std::uint32_t> comp_of, class_of, comm_of;
  std::vector<std::vector<std::uint32_t>> communities;
  std::vector<std::uint32_t> comm_class, comm_comp;
  std::vector<bool> island;
  const double wsum = std::accumulate(spec.class_weights.begin(), spec.class_weights.end(), 0.0);
  const auto hi = static_cast<std::size_t>(std::max(2.0, std::round(2 * spec.community_size - 2)));
  for (std::uint32_t ci = 0; ci < spec.components.size(); ++ci) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < spec.components[ci].second; ++i) {
      double u = rng.uniform() * wsum;
      std::size_t c = 0;
      while (c + 1 < k && u >= spec.class_weights[c]) u -= spec.class_weights[c++];
      ++counts[c];
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      std::size_t left = counts[c];
      while (left > 0) {
        std::size_t size;
        bool iso = false;
        if (rng.uniform() < spec.isolated_fraction) {
          size = 1;
          iso = true;
        } else if (rng.uniform() < spec.island_fraction) {
          size = std::min<std::size_t>(left, 2 + rng.below(2));
          iso = true;
        } else {
          size = std::min(left, 2 + static_cast<std::size_t>(rng.below(hi - 1)));
        }
        if (left - size == 1) ++size;
        communities.emplace_back();
        comm_class.push_back(c);
        comm_comp.push_back(ci);
        island.push_back(iso);
        for (std::size_t j = 0; j < size; ++j) {
          communities.back().push_back(static_cast<std::uint32_t>(comp_of.size()));
          comp_of.push_back(ci);
          class_of.push_back(c);
          comm_of.push_back(static_cast<std::uint32_t>(communities.size() - 1));
        }
        left -= size;
      }
    }
  }

  // Attributes: theme, class block and global words.
  std::vector<std::vector<std::uint32_t>> attrs(n);
  std::vector<std::vector<std::uint32_t>> themes(communities.size());
  for (std::size_t m = 0; m < communities.size(); ++m) {
    for (int i = 0; i < 30; ++i) themes[m].push_back(class_pool[comm_class[m]].draw(words_rng));
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto want = static_cast<std::size_t>(
        std::max(3.0, std::round(spec.words_per_node * (0.6 + 0.8 * words_rng.uniform()))));
    std::set<std::uint32_t> bag;
    for (std::size_t tries = 0; bag.size() < want && tries < 20 * want; ++tries) {
      const double r = words_rng.uniform();
      const auto& theme = themes[comm_of[v]];
      if (r < spec.theme_share)
        bag.insert(theme[words_rng.below(theme.size())]);
      else if (r < spec.theme_share + 0.3)
        bag.insert(class_pool[class_of[v]].draw(words_rng));
      else
        bag.insert(global.draw(words_rng));
    }
    attrs[v].assign(bag.begin(), bag.end());
  }

  // Edges: spanning trees inside communities, one bridge per non-island
  // community, then extra edges whose endpoints follow a heavy-tailed
  // activity weight (hubs) with a share of triadic closures.
  std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
  std::vector<std::vector<std::uint32_t>> adj(n);
  auto add = [&](std::uint32_t a, std::uint32_t b) {
    if (a == b || !edge_set.emplace(std::min(a, b), std::max(a, b)).second) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
    return true;
  };
  for (const auto& members : communities) {
    for (std::size_t i = 1; i < members.size(); ++i) add(members[i], members[rng.below(i)]);
  }
  std::vector<std::vector<std::uint32_t>> earlier_any(spec.components.size());
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> earlier_class;
  for (std::uint32_t m = 0; m < communities.size(); ++m) {
    if (island[m]) continue;
    auto& any = earlier_any[comm_comp[m]];
    auto& same = earlier_class[{comm_comp[m], comm_class[m]}];
    if (!any.empty()) {
      const auto& pool = (!same.empty() && rng.uniform() < 0.7) ? same : any;
      const auto& other = communities[pool[rng.below(pool.size())]];
      const auto& mine = communities[m];
      add(mine[rng.below(mine.size())], other[rng.below(other.size())]);
    }
    any.push_back(m);
    same.push_back(m);
  }
  if (edge_set.size() > spec.edges)
    throw ConfigError("surrogate edge target is below the spanning structure size");

  // Pareto activity weights; sampling tables per component and per
  // (component, class), over non-island nodes only.
  std::vector<double> activity(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (island[comm_of[v]]) continue;
    const double a = std::pow(1.0 - rng.uniform(), -1.0 / (spec.activity_exponent - 1.0));
    activity[v] = std::min(a, spec.activity_cap);
  }
  struct Table {
    std::vector<std::uint32_t> nodes;
    std::vector<double> cdf;
    std::uint32_t draw(CounterRng& r) const {
      const double u = r.uniform() * cdf.back();
      const auto i = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      return nodes[std::min<std::size_t>(i, nodes.size() - 1)];
    }
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, Table> by_class;
  std::vector<Table> by_comp(spec.components.size());
  Table all;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (activity[v] == 0) continue;
    for (Table* t : {&by_class[{comp_of[v], class_of[v]}], &by_comp[comp_of[v]], &all}) {
      t->nodes.push_back(v);
      t->cdf.push_back((t->cdf.empty() ? 0.0 : t->cdf.back()) + activity[v]);
    }
  }
  if (all.nodes.size() < 2 && edge_set.size() < spec.edges)
    throw ConfigError("surrogate spec leaves no nodes for extra edges");
  for (std::size_t tries = 0; edge_set.size() < spec.edges; ++tries) {
    if (tries > 200 * spec.edges) throw ConfigError("surrogate edge target is not reachable");
    const std::uint32_t u = all.draw(rng);
    const double r = rng.uniform();
    std::uint32_t v;
    if (r < 0.3) {
      const auto& members = communities[comm_of[u]];
      v = members[rng.below(members.size())];
    } else if (r < 0.55) {
      if (adj[u].empty()) continue;
      const auto x = adj[u][rng.below(adj[u].size())];
      v = adj[x][rng.below(adj[x].size())];
    } else if (r < 0.85) {
      v = by_class[{comp_of[u], class_of[u]}].draw(rng);
    } else {
      v = by_comp[comp_of[u]].draw(rng);
    }
    add(u, v);
  }

  // Shuffle node order so that files are not sorted by class.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(std::span(order));
  std::vector<std::uint32_t> position(n);
  for (std::uint32_t i = 0; i < n; ++i) position[order[i]] = i;

  SurrogateData out;
  out.component.resize(n);
  out.labels.resize(n);
  out.attributes.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    out.component[position[v]] = comp_of[v];
    out.labels[position[v]] = spec.class_names[class_of[v]];
    out.attributes[position[v]] = std::move(attrs[v]);
  }
  out.ids = make_ids(spec, out.component, rng);
  for (const auto& [a, b] : edge_set) {
    auto e = std::make_pair(position[a], position[b]);
    if (rng.bernoulli(0.5)) std::swap(e.first, e.second);
    out.edges.push_back(e);
  }
  std::span<std::pair<std::uint32_t, std::uint32_t>> es(out.edges);
  rng.shuffle(es);
  return out;
}

DatasetFiles write_surrogate_dataset(const SurrogateSpec& spec, std::uint64_t seed,
                                     const std::filesystem::path& dir) {
  const SurrogateData data = generate_surrogate(spec, seed);
  CounterRng rng(derive_seed(seed, "surrogate-files"));
  std::filesystem::create_directories(dir);
  DatasetFiles files;
  files.name = spec.name;

  std::vector<std::uint8_t> row(spec.dimension);
  for (std::uint32_t c = 0; c < spec.components.size(); ++c) {
    const auto stem = spec.components[c].first;
    const auto content = dir / (stem + ".content");
    const auto cites = dir / (stem + ".cites");
    std::ofstream cout_(content), eout(cites);
    if (!cout_ || !eout) throw IoError("cannot write surrogate files in " + dir.string());

    std::string line;
    for (std::size_t v = 0; v < data.ids.size(); ++v) {
      if (data.component[v] != c) continue;
      std::fill(row.begin(), row.end(), 0);
      for (auto p : data.attributes[v]) row[p] = 1;
      line = data.ids[v];
      for (auto x : row) {
        line += '\t';
        line += static_cast<char>('0' + x);
      }
      line += '\t';
      line += data.labels[v];
      cout_ << line << '\n';
    }
    for (const auto& [a, b] : data.edges) {
      if (data.component[a] != c) continue;
      eout << data.ids[a] << '\t' << data.ids[b] << '\n';
      if (rng.uniform() < spec.reverse_duplicate_fraction) eout << data.ids[b] << '\t' << data.ids[a] << '\n';
    }
    if (c == 0) {
      for (std::size_t i = 0; i < spec.unknown_cites; ++i) {
        const auto& known = data.ids[rng.below(data.ids.size())];
        eout << "missing" << i << "x" << rng.below(100000) << '\t' << known << '\n';
      }
    }
    files.content.push_back(content);
    files.cites.push_back(cites);
  }
  return files;
}

}  // namespace netbandit
