#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netbandit/arm.hpp"
#include "netbandit/bandit.hpp"
#include "netbandit/cmatch.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/mcl.hpp"
#include "netbandit/rng.hpp"
#include "netbandit/world.hpp"

namespace netbandit {

enum class DesignKind { NodeAB, ClusterAB, CMatchAB, NodeMAB, ClusterMAB, CMatchMAB };

inline constexpr DesignKind kAllDesigns[] = {DesignKind::NodeAB,     DesignKind::ClusterAB,
                                             DesignKind::CMatchAB,   DesignKind::NodeMAB,
                                             DesignKind::ClusterMAB, DesignKind::CMatchMAB};

/// `node-ab | cluster-ab | cmatch-ab | node-mab | cluster-mab | cmatch-mab`
std::string_view to_string(DesignKind d);
/// Inverse of to_string; throws ConfigError on anything else.
DesignKind parse_design(std::string_view name);

bool is_bandit(DesignKind d);
bool needs_clustering(DesignKind d);
bool needs_match_map(DesignKind d);

/// Structures a design may need. Pointers are non-owning and may be null for
/// designs that do not use them.
struct DesignContext {
  const AttributedGraph* graph = nullptr;
  const Clustering* clustering = nullptr;
  const ClusterMatchMap* match = nullptr;

  /// Throws ConfigError if `d` needs something missing here.
  void check(DesignKind d) const;
};

/// Full pre-experiment assignment for an A/B design.
///
/// node-ab: shuffle nodes, the first floor(n/2) are treated.
/// cluster-ab: shuffle clusters, the first floor(k/2) are treated.
/// cmatch-ab: one fair coin per matched pair (ascending) picks the treated
/// side; then one fair coin per unmatched cluster (ascending).
std::vector<Arm> assign_ab(DesignKind design, const DesignContext& ctx, CounterRng& rng);

/// Arm recorded per cluster by the cluster-level bandits.
class ClusterArmRegistry {
 public:
  explicit ClusterArmRegistry(std::size_t num_clusters) : arms_(num_clusters) {}

  std::optional<Arm> get(ClusterId c) const { return arms_[c]; }
  /// Throws InvariantViolation if `c` already holds the other arm.
  void record(ClusterId c, Arm a);

 private:
  std::vector<std::optional<Arm>> arms_;
};

/// Arm for an arriving node under a bandit design. `state.t` must already count
/// this arrival.
///
/// node-mab: UCB. cluster-mab: the cluster's recorded arm, else UCB.
/// cmatch-mab: the cluster's recorded arm, else the complement of its mate's
/// recorded arm, else UCB (also for unmatched clusters). Cluster variants
/// record the returned arm for the arrival's cluster.
Arm mab_select(DesignKind design, NodeIndex node, const BanditState& state,
               const SimulationWorld& world, const DesignContext& ctx,
               ClusterArmRegistry* registry, TieBreak tie = TieBreak::LowestIndex,
               CounterRng* tie_rng = nullptr);

}  // namespace netbandit
