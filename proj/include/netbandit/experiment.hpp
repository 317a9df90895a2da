#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netbandit/designs.hpp"
#include "netbandit/metrics.hpp"
#include "netbandit/pipeline.hpp"
#include "netbandit/simulation.hpp"

namespace netbandit {

struct ExperimentConfig {
  std::string dataset = "cora";
  std::vector<DesignKind> designs{DesignKind::ClusterMAB};
  double alpha = 8.0;
  std::size_t runs = 10;
  std::size_t interval = 50;
  double p_treated = 0.6;
  double p_control = 0.2;
  std::uint64_t seed = 42;
  double explore_fraction = 1.0;  // share of the network explored per run
  TieBreak tie = TieBreak::LowestIndex;
  bool event_log = false;  // per-run JSON-lines arrival logs in out_dir

  WorldConfig world() const { return {p_treated, p_control, 0}; }
  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Seeds for run `s` of an experiment. Shared by every design and alpha, so
/// cells with the same run index see the same arrival order and the same
/// outcome stream.
struct RunSeeds {
  std::uint64_t run;
  std::uint64_t arrivals;
  std::uint64_t world;
  std::uint64_t assignment;
  std::uint64_t ties;
};
RunSeeds run_seeds(std::uint64_t master_seed, std::size_t run_index);

/// One (design, alpha) cell: S runs and their aggregate.
struct CellResult {
  DesignKind design = DesignKind::NodeAB;
  double alpha = 0.0;
  std::vector<RunTrace> runs;
  AggregateReport aggregate;
};

struct ExperimentResult {
  std::vector<CellResult> cells;  // config.designs order
};

/// Runs every configured design at `config.alpha`. Runs execute in parallel;
/// each run is sequential and results do not depend on the thread count.
/// Event logs, when enabled, go to `event_dir`.
ExperimentResult run_experiment(const ExperimentConfig& config, const PreparedDataset& data,
                                const std::filesystem::path& event_dir = {});

struct SweepConfig {
  ExperimentConfig base;
  std::vector<double> alphas;  // default 1..30
  std::vector<DesignKind> designs;
};

struct SweepRow {
  DesignKind design;
  std::optional<double> alpha;  // empty for A/B designs (alpha-independent)
  std::size_t runs;
  AggregateRow final_row;
};

struct SweepResult {
  std::vector<CellResult> cells;
  std::vector<SweepRow> rows;
};

/// One cell per (bandit design, alpha) and one per A/B design.
SweepResult run_alpha_sweep(const SweepConfig& sweep, const PreparedDataset& data);

/// Parses "1..30", "1,4,8" or a mix ("1..3,8").
std::vector<double> parse_alpha_list(std::string_view text);

/// Parses a comma separated list of design names; "all" selects every design.
std::vector<DesignKind> parse_design_list(std::string_view text);

}  // namespace netbandit
