#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "netbandit/bandit.hpp"
#include "netbandit/designs.hpp"
#include "netbandit/metrics.hpp"
#include "netbandit/world.hpp"

namespace netbandit {

struct RunSpec {
  DesignKind design = DesignKind::NodeMAB;
  double alpha = 8.0;
  WorldConfig world;                    // world.seed drives the outcome stream
  std::uint64_t assignment_seed = 0;    // A/B randomisation
  std::uint64_t tie_seed = 0;           // only used with TieBreak::Random
  std::size_t interval = 50;
  std::size_t max_arrivals = std::numeric_limits<std::size_t>::max();
  TieBreak tie = TieBreak::LowestIndex;
  std::ostream* event_log = nullptr;    // JSON lines, one per arrival
};

struct RewardRecord {
  Arm arm;
  std::uint32_t reward;
};

struct RunTrace {
  std::vector<Checkpoint> checkpoints;
  std::vector<RewardRecord> rewards;  // one per arrival, in order
  BanditState bandit;                 // final state (bandit designs)
};

/// Called after every arrival with the report, the world and the bandit state.
using ArrivalHook =
    std::function<void(const ArrivalReport&, const SimulationWorld&, const BanditState&)>;

/// Uniformly random permutation of [0, n).
std::vector<NodeIndex> arrival_permutation(std::size_t n, std::uint64_t seed);

/// Runs one design over the arrival order (or its first `max_arrivals` nodes).
/// Bandit designs advance t and update the arm estimate on every arrival,
/// including arrivals whose arm was forced by their cluster.
RunTrace simulate_run(const DesignContext& ctx, std::span<const NodeIndex> arrival_order,
                      const RunSpec& spec, const ArrivalHook& hook = {});

}  // namespace netbandit
