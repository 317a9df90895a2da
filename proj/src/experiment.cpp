#include "netbandit/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "netbandit/errors.hpp"

namespace netbandit {

void ExperimentConfig::validate() const {
  if (designs.empty()) throw ConfigError("no design selected");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (interval < 1) throw ConfigError("checkpoint interval must be >= 1");
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (!(explore_fraction > 0.0 && explore_fraction <= 1.0))
    throw ConfigError("explore fraction must lie in (0, 1]");
  world().validate();
  if (p_treated == p_control) throw ConfigError("true TTE is zero; error percentages are undefined");
}

RunSeeds run_seeds(std::uint64_t master_seed, std::size_t run_index) {
  RunSeeds s;
  s.run = derive_seed(master_seed, static_cast<std::uint64_t>(run_index));
  s.arrivals = derive_seed(s.run, "arrivals");
  s.world = derive_seed(s.run, "world");
  s.assignment = derive_seed(s.run, "assignment");
  s.ties = derive_seed(s.run, "ties");
  return s;
}

namespace {

struct Task {
  std::size_t cell;
  std::size_t run;
};

void execute_cells(std::vector<CellResult>& cells, const ExperimentConfig& config,
                   const PreparedDataset& data, const std::filesystem::path& event_dir) {
  const std::size_t n = data.graph.num_nodes();
  const auto limit = static_cast<std::size_t>(std::floor(config.explore_fraction * static_cast<double>(n)));

  std::vector<std::vector<NodeIndex>> orders(config.runs);
  for (std::size_t s = 0; s < config.runs; ++s)
    orders[s] = arrival_permutation(n, run_seeds(config.seed, s).arrivals);

  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c].runs.resize(config.runs);
    for (std::size_t s = 0; s < config.runs; ++s) tasks.push_back({c, s});
  }

  const auto ctx = data.context();
  const auto count = static_cast<std::int64_t>(tasks.size());
  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& task = tasks[i];
    auto& cell = cells[task.cell];
    const auto seeds = run_seeds(config.seed, task.run);
    RunSpec spec;
    spec.design = cell.design;
    spec.alpha = cell.alpha;
    spec.world = config.world();
    spec.world.seed = seeds.world;
    spec.assignment_seed = seeds.assignment;
    spec.tie_seed = seeds.ties;
    spec.interval = config.interval;
    spec.max_arrivals = std::max<std::size_t>(limit, 1);
    spec.tie = config.tie;
    try {
      std::ofstream log;
      if (config.event_log && !event_dir.empty()) {
        std::ostringstream name;
        name << "events-" << to_string(cell.design) << "-a" << cell.alpha << "-r" << task.run + 1
             << ".jsonl";
        log.open(event_dir / name.str());
        spec.event_log = &log;
      }
      cell.runs[task.run] = simulate_run(ctx, orders[task.run], spec);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  const double truth = config.world().true_tte();
  for (auto& cell : cells) {
    std::vector<std::vector<Checkpoint>> traces;
    traces.reserve(cell.runs.size());
    for (const auto& r : cell.runs) traces.push_back(r.checkpoints);
    cell.aggregate = aggregate(traces, truth);
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const PreparedDataset& data,
                                const std::filesystem::path& event_dir) {
  config.validate();
  for (DesignKind d : config.designs) data.context().check(d);
  ExperimentResult result;
  for (DesignKind d : config.designs) {
    CellResult cell;
    cell.design = d;
    cell.alpha = config.alpha;
    result.cells.push_back(std::move(cell));
  }
  execute_cells(result.cells, config, data, event_dir);
  return result;
}

SweepResult run_alpha_sweep(const SweepConfig& sweep, const PreparedDataset& data) {
  sweep.base.validate();
  if (sweep.alphas.empty()) throw ConfigError("alpha sweep needs at least one alpha");
  for (double a : sweep.alphas) {
    if (!(a >= 0.0)) throw ConfigError("alpha must be >= 0");
  }
  const auto& designs = sweep.designs.empty() ? sweep.base.designs : sweep.designs;
  SweepResult result;
  for (DesignKind d : designs) {
    data.context().check(d);
    if (is_bandit(d)) {
      for (double a : sweep.alphas) {
        CellResult cell;
        cell.design = d;
        cell.alpha = a;
        result.cells.push_back(std::move(cell));
      }
    } else {
      CellResult cell;
      cell.design = d;
      cell.alpha = sweep.base.alpha;
      result.cells.push_back(std::move(cell));
    }
  }
  execute_cells(result.cells, sweep.base, data, {});
  for (const auto& cell : result.cells) {
    SweepRow row{cell.design, std::nullopt, cell.runs.size(), cell.aggregate.final_row()};
    if (is_bandit(cell.design)) row.alpha = cell.alpha;
    result.rows.push_back(row);
  }
  return result;
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("not a number: '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename F>
void for_each_item(std::string_view text, F f) {
  while (!text.empty()) {
    const auto comma = text.find(',');
    f(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
}

}  // namespace

std::vector<double> parse_alpha_list(std::string_view text) {
  std::vector<double> out;
  for_each_item(text, [&](std::string_view item) {
    if (item.empty()) return;
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const double lo = parse_number(trim(item.substr(0, dots)));
      const double hi = parse_number(trim(item.substr(dots + 2)));
      if (lo > hi || lo != std::floor(lo) || hi != std::floor(hi))
        throw ConfigError("alpha range must be ascending integers: '" + std::string(item) + "'");
      for (double a = lo; a <= hi; a += 1.0) out.push_back(a);
    } else {
      out.push_back(parse_number(item));
    }
  });
  if (out.empty()) throw ConfigError("empty alpha list");
  return out;
}

std::vector<DesignKind> parse_design_list(std::string_view text) {
  if (trim(text) == "all") return {std::begin(kAllDesigns), std::end(kAllDesigns)};
  std::vector<DesignKind> out;
  for_each_item(text, [&](std::string_view item) {
    if (!item.empty()) out.push_back(parse_design(item));
  });
  if (out.empty()) throw ConfigError("empty design list");
  return out;
}

}  // namespace netbandit
