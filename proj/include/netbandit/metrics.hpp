#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "netbandit/world.hpp"

namespace netbandit {

/// Difference of mean outcomes between explored treated and explored control
/// nodes; nullopt until both arms have at least one explored node.
std::optional<double> estimate_tte(const SimulationWorld& world);

/// Share of explored nodes that are active. Requires at least one explored node.
double reward_action_ratio(const SimulationWorld& world);

/// sqrt(mean((true_tte - estimate)^2)) as a percentage of true_tte.
double rmse_percent(std::span<const double> estimates, double true_tte);

/// |true_tte - estimate| as a percentage of true_tte (single-run error).
double error_percent(double estimate, double true_tte);

struct Checkpoint {
  std::size_t arrivals = 0;
  std::optional<double> tte_estimate;
  double ra_ratio = 0.0;
  std::size_t n_treated = 0;
  std::size_t n_control = 0;

  bool operator==(const Checkpoint&) const = default;
};

/// Cumulative metrics of the world as it stands.
Checkpoint snapshot(const SimulationWorld& world);

/// Records a checkpoint every `interval` arrivals plus one at the end.
class CheckpointRecorder {
 public:
  explicit CheckpointRecorder(std::size_t interval);

  /// Call once after each processed arrival.
  void after_arrival(const SimulationWorld& world);
  /// Adds the final checkpoint unless the last arrival already produced one.
  void finish(const SimulationWorld& world);

  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }
  std::vector<Checkpoint> take() { return std::move(checkpoints_); }

 private:
  std::size_t interval_;
  std::vector<Checkpoint> checkpoints_;
};

struct AggregateRow {
  std::size_t arrivals = 0;
  std::size_t runs_defined = 0;     // runs with a defined estimate here
  std::optional<double> rmse_pct;   // over defined runs only
  double mean_ra = 0.0;             // over all runs

  bool operator==(const AggregateRow&) const = default;
};

struct AggregateReport {
  std::size_t runs = 0;
  double true_tte = 0.0;
  std::vector<AggregateRow> rows;

  const AggregateRow& final_row() const { return rows.back(); }
  bool operator==(const AggregateReport&) const = default;
};

/// Aligns runs by checkpoint index. All traces must share arrival counts.
AggregateReport aggregate(std::span<const std::vector<Checkpoint>> traces, double true_tte);

}  // namespace netbandit
