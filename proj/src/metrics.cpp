#include "netbandit/metrics.hpp"

#include <cmath>

#include "netbandit/errors.hpp"

namespace netbandit {

std::optional<double> estimate_tte(const SimulationWorld& world) {
  const auto n1 = world.explored_count(Arm::Treatment);
  const auto n0 = world.explored_count(Arm::Control);
  if (n1 == 0 || n0 == 0) return std::nullopt;
  return static_cast<double>(world.active_count(Arm::Treatment)) / static_cast<double>(n1) -
         static_cast<double>(world.active_count(Arm::Control)) / static_cast<double>(n0);
}

double reward_action_ratio(const SimulationWorld& world) {
  const auto explored = world.num_explored();
  NETBANDIT_REQUIRE(explored > 0, "reward_action_ratio: no explored nodes");
  return static_cast<double>(world.active_count(Arm::Treatment) + world.active_count(Arm::Control)) /
         static_cast<double>(explored);
}

double rmse_percent(std::span<const double> estimates, double true_tte) {
  NETBANDIT_REQUIRE(!estimates.empty(), "rmse_percent: no estimates");
  NETBANDIT_REQUIRE(true_tte != 0.0, "rmse_percent: true TTE is zero");
  double sq = 0.0;
  for (double e : estimates) sq += (true_tte - e) * (true_tte - e);
  return std::sqrt(sq / static_cast<double>(estimates.size())) / std::abs(true_tte) * 100.0;
}

double error_percent(double estimate, double true_tte) {
  NETBANDIT_REQUIRE(true_tte != 0.0, "error_percent: true TTE is zero");
  return std::abs(true_tte - estimate) / std::abs(true_tte) * 100.0;
}

Checkpoint snapshot(const SimulationWorld& world) {
  Checkpoint c;
  c.arrivals = world.num_explored();
  c.tte_estimate = estimate_tte(world);
  c.ra_ratio = c.arrivals == 0 ? 0.0 : reward_action_ratio(world);
  c.n_treated = world.explored_count(Arm::Treatment);
  c.n_control = world.explored_count(Arm::Control);
  return c;
}

CheckpointRecorder::CheckpointRecorder(std::size_t interval) : interval_(interval) {
  NETBANDIT_REQUIRE(interval >= 1, "checkpoint interval must be >= 1");
}

void CheckpointRecorder::after_arrival(const SimulationWorld& world) {
  if (world.num_explored() % interval_ == 0) checkpoints_.push_back(snapshot(world));
}

void CheckpointRecorder::finish(const SimulationWorld& world) {
  if (world.num_explored() == 0) return;
  if (checkpoints_.empty() || checkpoints_.back().arrivals != world.num_explored())
    checkpoints_.push_back(snapshot(world));
}

AggregateReport aggregate(std::span<const std::vector<Checkpoint>> traces, double true_tte) {
  NETBANDIT_REQUIRE(!traces.empty(), "aggregate: no runs");
  AggregateReport report;
  report.runs = traces.size();
  report.true_tte = true_tte;
  const std::size_t k = traces.front().size();
  for (const auto& t : traces) {
    NETBANDIT_REQUIRE(t.size() == k, "aggregate: runs have different checkpoint counts");
  }
  for (std::size_t i = 0; i < k; ++i) {
    AggregateRow row;
    row.arrivals = traces.front()[i].arrivals;
    std::vector<double> defined;
    double ra = 0.0;
    for (const auto& t : traces) {
      NETBANDIT_REQUIRE(t[i].arrivals == row.arrivals, "aggregate: runs are not aligned");
      ra += t[i].ra_ratio;
      if (t[i].tte_estimate) defined.push_back(*t[i].tte_estimate);
    }
    row.mean_ra = ra / static_cast<double>(traces.size());
    row.runs_defined = defined.size();
    if (!defined.empty()) row.rmse_pct = rmse_percent(defined, true_tte);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace netbandit
