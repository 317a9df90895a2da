#include "netbandit/designs.hpp"

#include <numeric>

#include "netbandit/errors.hpp"

namespace netbandit {

std::string_view to_string(DesignKind d) {
  switch (d) {
    case DesignKind::NodeAB: return "node-ab";
    case DesignKind::ClusterAB: return "cluster-ab";
    case DesignKind::CMatchAB: return "cmatch-ab";
    case DesignKind::NodeMAB: return "node-mab";
    case DesignKind::ClusterMAB: return "cluster-mab";
    case DesignKind::CMatchMAB: return "cmatch-mab";
  }
  return "?";
}

DesignKind parse_design(std::string_view name) {
  for (DesignKind d : kAllDesigns) {
    if (to_string(d) == name) return d;
  }
  throw ConfigError("unknown design '" + std::string(name) +
                    "' (expected node-ab, cluster-ab, cmatch-ab, node-mab, cluster-mab or cmatch-mab)");
}

bool is_bandit(DesignKind d) {
  return d == DesignKind::NodeMAB || d == DesignKind::ClusterMAB || d == DesignKind::CMatchMAB;
}

bool needs_clustering(DesignKind d) {
  return d != DesignKind::NodeAB && d != DesignKind::NodeMAB;
}

bool needs_match_map(DesignKind d) {
  return d == DesignKind::CMatchAB || d == DesignKind::CMatchMAB;
}

void DesignContext::check(DesignKind d) const {
  if (graph == nullptr) throw ConfigError("design context has no graph");
  if (needs_clustering(d) && clustering == nullptr)
    throw ConfigError(std::string(to_string(d)) + " requires a clustering");
  if (needs_match_map(d) && match == nullptr)
    throw ConfigError(std::string(to_string(d)) + " requires a cluster match map");
  if (clustering != nullptr && clustering->assignment.size() != graph->num_nodes())
    throw ConfigError("clustering does not cover the graph");
}

std::vector<Arm> assign_ab(DesignKind design, const DesignContext& ctx, CounterRng& rng) {
  ctx.check(design);
  const std::size_t n = ctx.graph->num_nodes();
  std::vector<Arm> arms(n, Arm::Control);

  switch (design) {
    case DesignKind::NodeAB: {
      std::vector<NodeIndex> order(n);
      std::iota(order.begin(), order.end(), NodeIndex{0});
      rng.shuffle(std::span(order));
      for (std::size_t i = 0; i < n / 2; ++i) arms[order[i]] = Arm::Treatment;
      return arms;
    }
    case DesignKind::ClusterAB: {
      const std::size_t k = ctx.clustering->num_clusters();
      std::vector<ClusterId> order(k);
      std::iota(order.begin(), order.end(), ClusterId{0});
      rng.shuffle(std::span(order));
      for (std::size_t i = 0; i < k / 2; ++i) {
        for (NodeIndex v : ctx.clustering->clusters[order[i]]) arms[v] = Arm::Treatment;
      }
      return arms;
    }
    case DesignKind::CMatchAB: {
      const std::size_t k = ctx.clustering->num_clusters();
      std::vector<Arm> cluster_arm(k, Arm::Control);
      for (auto [a, b] : ctx.match->pairs()) {
        const bool a_treated = rng.bernoulli(0.5);
        cluster_arm[a] = a_treated ? Arm::Treatment : Arm::Control;
        cluster_arm[b] = opposite(cluster_arm[a]);
      }
      for (ClusterId c = 0; c < k; ++c) {
        if (!ctx.match->contains(c)) cluster_arm[c] = rng.bernoulli(0.5) ? Arm::Treatment : Arm::Control;
      }
      for (NodeIndex v = 0; v < n; ++v) arms[v] = cluster_arm[ctx.clustering->assignment[v]];
      return arms;
    }
    default:
      throw ConfigError(std::string(to_string(design)) + " is not an A/B design");
  }
}

void ClusterArmRegistry::record(ClusterId c, Arm a) {
  if (arms_[c] && *arms_[c] != a)
    throw InvariantViolation("cluster " + std::to_string(c) + " recorded with both arms");
  arms_[c] = a;
}

Arm mab_select(DesignKind design, NodeIndex node, const BanditState& state,
               const SimulationWorld& world, const DesignContext& ctx,
               ClusterArmRegistry* registry, TieBreak tie, CounterRng* tie_rng) {
  NETBANDIT_REQUIRE(is_bandit(design), "mab_select: not a bandit design");
  NETBANDIT_REQUIRE(!world.explored(node), "mab_select: node already explored");
  ctx.check(design);
  if (design == DesignKind::NodeMAB) return ucb_select(state, tie, tie_rng);

  NETBANDIT_REQUIRE(registry != nullptr, "mab_select: cluster designs need a registry");
  const ClusterId c = ctx.clustering->assignment[node];
  if (auto own = registry->get(c)) return *own;

  Arm chosen;
  std::optional<ClusterId> mate;
  if (design == DesignKind::CMatchMAB) mate = ctx.match->mate(c);
  if (mate && registry->get(*mate)) {
    chosen = opposite(*registry->get(*mate));
  } else {
    chosen = ucb_select(state, tie, tie_rng);
  }
  registry->record(c, chosen);
  return chosen;
}

}  // namespace netbandit
