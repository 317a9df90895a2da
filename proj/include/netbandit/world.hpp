#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "netbandit/arm.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/rng.hpp"

namespace netbandit {

/// Activation probabilities. Each covers direct treatment plus within-arm
/// (allowable) interference; only cross-arm contagion is simulated explicitly.
struct WorldConfig {
  double p_treated = 0.6;
  double p_control = 0.2;
  std::uint64_t seed = 0;

  double true_tte() const { return p_treated - p_control; }
  double activation_probability(Arm a) const {
    return a == Arm::Treatment ? p_treated : p_control;
  }
  /// Requires 0 <= p_control <= p_treated <= 1.
  void validate() const;
};

/// Mean outcome in the counterfactual world where every node takes `arm`.
/// With a single arm there is no cross-arm edge, so this is just the arm's
/// activation probability.
double ground_truth_outcome_mean(Arm arm, const WorldConfig& config);

struct ArrivalReport;

/// Evolving state of one experiment run.
class SimulationWorld {
 public:
  SimulationWorld(std::size_t num_nodes, std::uint64_t seed);

  std::size_t num_nodes() const { return arm_.size(); }

  /// Fixes an unexplored node's arm ahead of its arrival (A/B designs).
  void preassign(NodeIndex v, Arm a);

  std::optional<Arm> arm(NodeIndex v) const;
  bool explored(NodeIndex v) const { return explored_[v] != 0; }
  bool active(NodeIndex v) const { return outcome_[v] != 0; }

  /// N_a: explored nodes in arm a.
  std::size_t explored_count(Arm a) const { return explored_count_[arm_index(a)]; }
  /// Explored nodes in arm a with Y = 1.
  std::size_t active_count(Arm a) const { return active_count_[arm_index(a)]; }
  std::size_t num_explored() const { return explored_count_[0] + explored_count_[1]; }

  std::uint64_t draws() const { return rng_.draws(); }

 private:
  friend ArrivalReport process_arrival(NodeIndex, Arm, SimulationWorld&, const AttributedGraph&,
                                       const WorldConfig&);
  void activate(NodeIndex v);

  static constexpr std::uint8_t kUnassigned = 0xff;
  std::vector<std::uint8_t> arm_;
  std::vector<std::uint8_t> outcome_;
  std::vector<std::uint8_t> explored_;
  std::array<std::size_t, 2> explored_count_{0, 0};
  std::array<std::size_t, 2> active_count_{0, 0};
  CounterRng rng_;
};

struct ArrivalReport {
  NodeIndex node = 0;
  Arm arm = Arm::Control;
  bool direct_activated = false;
  bool inbound_contagion = false;
  std::optional<NodeIndex> inbound_source;  // neighbor whose contagion activated the arrival
  std::vector<NodeIndex> outbound_activations;
  std::uint32_t reward = 0;  // newly active nodes this arrival
};

/// Explores `node` under `arm`.
///
/// 1. Y ~ Bernoulli(p_arm).
/// 2. If still inactive: one Bernoulli(e.p) trial per explored, active,
///    opposite-arm neighbor in ascending index order, stopping at the first
///    success.
/// 3. If active: one Bernoulli(e.p) trial per explored, inactive, opposite-arm
///    neighbor in ascending order; each success activates that neighbor.
///
/// Contagion never chains further. The reward counts every node that became
/// active during this call.
ArrivalReport process_arrival(NodeIndex node, Arm arm, SimulationWorld& world,
                              const AttributedGraph& graph, const WorldConfig& config);

/// Appends one JSON object describing the arrival to `out`, newline terminated.
void write_arrival_event(std::ostream& out, std::size_t arrival_index, const ArrivalReport& report,
                         const AttributedGraph& graph);

}  // namespace netbandit
