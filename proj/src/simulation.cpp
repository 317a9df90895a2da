#include "netbandit/simulation.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "netbandit/errors.hpp"

namespace netbandit {

std::vector<NodeIndex> arrival_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  CounterRng rng(seed);
  rng.shuffle(std::span(order));
  return order;
}

RunTrace simulate_run(const DesignContext& ctx, std::span<const NodeIndex> arrival_order,
                      const RunSpec& spec, const ArrivalHook& hook) {
  ctx.check(spec.design);
  spec.world.validate();
  NETBANDIT_REQUIRE(spec.alpha >= 0.0, "simulate_run: alpha must be nonnegative");
  const auto& graph = *ctx.graph;

  SimulationWorld world(graph.num_nodes(), spec.world.seed);
  const bool bandit = is_bandit(spec.design);
  if (!bandit) {
    CounterRng assign_rng(spec.assignment_seed);
    const auto arms = assign_ab(spec.design, ctx, assign_rng);
    for (NodeIndex v = 0; v < arms.size(); ++v) world.preassign(v, arms[v]);
  }

  std::optional<ClusterArmRegistry> registry;
  if (bandit && needs_clustering(spec.design)) registry.emplace(ctx.clustering->num_clusters());
  CounterRng tie_rng(spec.tie_seed);

  RunTrace trace;
  trace.bandit.alpha = spec.alpha;
  const std::size_t limit = std::min(spec.max_arrivals, arrival_order.size());
  trace.rewards.reserve(limit);
  CheckpointRecorder recorder(spec.interval);

  for (std::size_t k = 0; k < limit; ++k) {
    const NodeIndex node = arrival_order[k];
    Arm arm;
    if (bandit) {
      ++trace.bandit.t;
      arm = mab_select(spec.design, node, trace.bandit, world, ctx, registry ? &*registry : nullptr,
                       spec.tie, &tie_rng);
    } else {
      arm = *world.arm(node);
    }

    const auto report = process_arrival(node, arm, world, graph, spec.world);
    if (bandit) trace.bandit = ucb_update(trace.bandit, arm, report.reward);
    trace.rewards.push_back({arm, report.reward});
    if (spec.event_log) write_arrival_event(*spec.event_log, k + 1, report, graph);
    recorder.after_arrival(world);
    if (hook) hook(report, world, trace.bandit);
  }
  recorder.finish(world);
  trace.checkpoints = recorder.take();
  return trace;
}

}  // namespace netbandit
