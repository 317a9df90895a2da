#include "netbandit/world.hpp"

#include <json.hpp>

#include "netbandit/errors.hpp"

namespace netbandit {

void WorldConfig::validate() const {
  if (!(p_control >= 0.0 && p_control <= p_treated && p_treated <= 1.0))
    throw ConfigError("activation probabilities must satisfy 0 <= p_control <= p_treated <= 1");
}

double ground_truth_outcome_mean(Arm arm, const WorldConfig& config) {
  return config.activation_probability(arm);
}

SimulationWorld::SimulationWorld(std::size_t num_nodes, std::uint64_t seed)
    : arm_(num_nodes, kUnassigned), outcome_(num_nodes, 0), explored_(num_nodes, 0), rng_(seed) {}

void SimulationWorld::preassign(NodeIndex v, Arm a) {
  NETBANDIT_REQUIRE(v < arm_.size(), "preassign: node out of range");
  NETBANDIT_REQUIRE(!explored(v), "preassign: node already explored");
  arm_[v] = static_cast<std::uint8_t>(a);
}

std::optional<Arm> SimulationWorld::arm(NodeIndex v) const {
  if (arm_[v] == kUnassigned) return std::nullopt;
  return static_cast<Arm>(arm_[v]);
}

void SimulationWorld::activate(NodeIndex v) {
  if (outcome_[v] != 0) throw InvariantViolation("node activated twice");
  outcome_[v] = 1;
  if (explored_[v]) ++active_count_[arm_[v]];
}

ArrivalReport process_arrival(NodeIndex node, Arm arm, SimulationWorld& world,
                              const AttributedGraph& graph, const WorldConfig& config) {
  NETBANDIT_REQUIRE(node < world.num_nodes(), "process_arrival: node out of range");
  NETBANDIT_REQUIRE(!world.explored(node), "process_arrival: node already explored");
  NETBANDIT_REQUIRE(arm == Arm::Control || arm == Arm::Treatment, "process_arrival: unassigned arm");
  if (auto pre = world.arm(node); pre && *pre != arm)
    throw ContractViolation("process_arrival: arm differs from the pre-assigned arm");

  ArrivalReport report;
  report.node = node;
  report.arm = arm;

  const auto a = static_cast<std::uint8_t>(arm);
  const auto other = static_cast<std::uint8_t>(opposite(arm));
  world.arm_[node] = a;
  world.explored_[node] = 1;
  ++world.explored_count_[a];

  // Phase 1: direct treatment + allowable interference.
  if (world.rng_.bernoulli(config.activation_probability(arm))) {
    world.activate(node);
    report.direct_activated = true;
  }

  const auto nbrs = graph.neighbors(node);

  // Phase 2: inbound contagion from active explored nodes of the other arm.
  if (!world.active(node)) {
    for (const auto& nb : nbrs) {
      const NodeIndex u = nb.node;
      if (!world.explored(u) || !world.active(u) || world.arm_[u] != other) continue;
      if (world.rng_.bernoulli(graph.spillover(nb))) {
        world.activate(node);
        report.inbound_contagion = true;
        report.inbound_source = u;
        break;
      }
    }
  }

  // Phase 3: outbound contagion, one hop only.
  if (world.active(node)) {
    for (const auto& nb : nbrs) {
      const NodeIndex u = nb.node;
      if (!world.explored(u) || world.active(u) || world.arm_[u] != other) continue;
      if (world.rng_.bernoulli(graph.spillover(nb))) {
        world.activate(u);
        report.outbound_activations.push_back(u);
      }
    }
  }

  report.reward = static_cast<std::uint32_t>((world.active(node) ? 1 : 0) +
                                             report.outbound_activations.size());
  return report;
}

void write_arrival_event(std::ostream& out, std::size_t arrival_index, const ArrivalReport& report,
                         const AttributedGraph& graph) {
  nlohmann::ordered_json j;
  j["arrival"] = arrival_index;
  j["node"] = graph.id(report.node);
  j["arm"] = std::string(to_string(report.arm));
  j["direct"] = report.direct_activated;
  j["inbound"] = report.inbound_contagion;
  if (report.inbound_source) j["inbound_source"] = graph.id(*report.inbound_source);
  auto outbound = nlohmann::json::array();
  for (NodeIndex v : report.outbound_activations) outbound.push_back(graph.id(v));
  j["outbound"] = std::move(outbound);
  j["reward"] = report.reward;
  out << j.dump() << '\n';
}

}  // namespace netbandit
