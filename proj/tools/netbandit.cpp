// netbandit: A/B versus bandit designs for total treatment effect estimation
// on attributed networks.
//
//   netbandit run   --dataset cora --design cluster-mab --alpha 8 --runs 10 --out results/
//   netbandit sweep --dataset cora --alphas 1..30 --designs all --out sweep/
//   netbandit plot  --input results/ --figure tradeoff|trace
//   netbandit synth --like cora --out data/cora
//
// Shared options may also come from a flat key = value file (--config);
// command line values win.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "netbandit/errors.hpp"
#include "netbandit/experiment.hpp"
#include "netbandit/output.hpp"
#include "netbandit/plots.hpp"
#include "netbandit/surrogate.hpp"

namespace fs = std::filesystem;
using namespace netbandit;

namespace {

struct Options {
  std::string dataset = "cora";
  std::string design = "cluster-mab";
  double alpha = 8.0;
  std::size_t runs = 10;
  std::size_t interval = 50;
  std::uint64_t seed = 42;
  double p_treated = 0.6;
  double p_control = 0.2;
  double explore_fraction = 1.0;
  std::string tie_break = "lowest";
  bool event_log = false;
  std::string out = "results";
  std::string data_root;
  std::string cache_dir;
  bool no_cache = false;
  bool recluster = false;
  bool no_plots = false;
  int threads = 0;
  MclParams mcl;
  CMatchParams cmatch;
};

ExperimentConfig experiment_config(const Options& o) {
  ExperimentConfig c;
  c.dataset = o.dataset;
  c.designs = parse_design_list(o.design);
  c.alpha = o.alpha;
  c.runs = o.runs;
  c.interval = o.interval;
  c.p_treated = o.p_treated;
  c.p_control = o.p_control;
  c.seed = o.seed;
  c.explore_fraction = o.explore_fraction;
  if (o.tie_break == "lowest") {
    c.tie = TieBreak::LowestIndex;
  } else if (o.tie_break == "random") {
    c.tie = TieBreak::Random;
  } else {
    throw ConfigError("--tie-break must be 'lowest' or 'random'");
  }
  c.event_log = o.event_log;
  c.validate();
  return c;
}

PreparedDataset prepare(const Options& o) {
  const fs::path root = o.data_root.empty() ? default_data_root() : fs::path(o.data_root);
  const DatasetFiles files = locate_dataset(root, o.dataset);
  PrepareOptions p;
  p.mcl = o.mcl;
  p.cmatch = o.cmatch;
  p.recluster = o.recluster;
  if (!o.no_cache) {
    if (!o.cache_dir.empty()) {
      p.cache_dir = o.cache_dir;
    } else if (const char* env = std::getenv("NETBANDIT_CACHE_DIR"); env && *env) {
      p.cache_dir = env;
    } else {
      p.cache_dir = root / ".netbandit-cache";
    }
  }
  std::cerr << "dataset " << files.name << ": preparing\n";
  PreparedDataset data = prepare_dataset(files, p);
  const auto& s = data.load_stats;
  if (s.unknown_endpoint_lines > 0)
    std::cerr << "warning: dropped " << s.unknown_endpoint_lines
              << " cites lines naming ids absent from the content file\n";
  if (s.self_loop_lines > 0) std::cerr << "warning: dropped " << s.self_loop_lines << " self-citation lines\n";
  std::cerr << "dataset " << data.name << ": " << data.graph.num_nodes() << " nodes, "
            << data.graph.num_edges() << " edges, " << data.clustering.num_clusters() << " clusters"
            << (data.clustering.converged ? "" : " (MCL did not converge)") << ", "
            << data.cmatch.match.num_pairs() << " matched cluster pairs"
            << (data.from_cache ? " [cached]" : "") << '\n';
  return data;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

void print_summary(const std::vector<CellResult>& cells) {
  for (const auto& c : cells) {
    const auto& row = c.aggregate.final_row();
    std::cout << to_string(c.design);
    if (is_bandit(c.design)) std::cout << " alpha=" << format_number(c.alpha);
    std::cout << ": rmse%=" << format_number(row.rmse_pct) << " ra=" << format_number(row.mean_ra)
              << '\n';
  }
}

int cmd_run(const Options& o, const std::string& cmdline) {
  const ExperimentConfig config = experiment_config(o);
  const PreparedDataset data = prepare(o);
  const fs::path out = o.out;
  fs::create_directories(out);
  const ExperimentResult result = run_experiment(config, data, out);

  std::ostringstream trace, agg;
  write_trace_csv(trace, data.name, result.cells, config.world().true_tte());
  write_aggregate_csv(agg, data.name, result.cells);
  write_text(out / "trace.csv", trace.str());
  write_text(out / "aggregate.csv", agg.str());
  write_manifest(out / "manifest.json", cmdline, config, data);
  if (!o.no_plots) emit_plots(out, Figure::Trace, out);
  print_summary(result.cells);
  return 0;
}

int cmd_sweep(const Options& o, const std::string& alphas, const std::string& designs,
              const std::string& cmdline) {
  SweepConfig sweep;
  sweep.base = experiment_config(o);
  sweep.alphas = parse_alpha_list(alphas);
  sweep.designs = parse_design_list(designs);
  const PreparedDataset data = prepare(o);
  const fs::path out = o.out;
  fs::create_directories(out);
  const SweepResult result = run_alpha_sweep(sweep, data);

  ExperimentConfig manifest_config = sweep.base;
  manifest_config.designs = sweep.designs;
  std::ostringstream trace, agg, table;
  write_trace_csv(trace, data.name, result.cells, sweep.base.world().true_tte());
  write_aggregate_csv(agg, data.name, result.cells);
  write_sweep_csv(table, data.name, result.rows);
  write_text(out / "trace.csv", trace.str());
  write_text(out / "aggregate.csv", agg.str());
  write_text(out / "sweep.csv", table.str());
  write_manifest(out / "manifest.json", cmdline, manifest_config, data, sweep.alphas);
  if (!o.no_plots) emit_plots(out, Figure::Tradeoff, out);
  print_summary(result.cells);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A/B versus multi-armed bandit designs for network total treatment effect estimation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file; command line values take precedence");

  Options o;
  app.add_option("--dataset", o.dataset, "Dataset name under the data root, or a directory")
      ->capture_default_str();
  app.add_option("--design", o.design, "Design or comma list: node-ab, cluster-ab, cmatch-ab, "
                                       "node-mab, cluster-mab, cmatch-mab, all")
      ->capture_default_str();
  app.add_option("--alpha", o.alpha, "UCB exploration weight")->capture_default_str();
  app.add_option("--runs", o.runs, "Independent runs per cell")->capture_default_str();
  app.add_option("--interval", o.interval, "Arrivals between checkpoints")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--p-treated", o.p_treated, "Activation probability under treatment")->capture_default_str();
  app.add_option("--p-control", o.p_control, "Activation probability under control")->capture_default_str();
  app.add_option("--explore-fraction", o.explore_fraction, "Share of nodes that arrive per run")
      ->capture_default_str();
  app.add_option("--tie-break", o.tie_break, "UCB tie rule: lowest (control) or random")
      ->capture_default_str();
  app.add_flag("--event-log", o.event_log, "Write per-run arrival logs (JSON lines)");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--data-root", o.data_root, "Dataset root (default $NETBANDIT_DATA_ROOT or ./data)");
  app.add_option("--cache-dir", o.cache_dir,
                 "Clustering cache (default $NETBANDIT_CACHE_DIR or <data-root>/.netbandit-cache)");
  app.add_flag("--no-cache", o.no_cache, "Do not read or write the clustering cache");
  app.add_flag("--recluster", o.recluster, "Recompute clustering and matching, replacing the cache");
  app.add_flag("--no-plots", o.no_plots, "Skip SVG output");
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--mcl-expansion", o.mcl.expansion)->capture_default_str();
  app.add_option("--mcl-inflation", o.mcl.inflation)->capture_default_str();
  app.add_option("--mcl-prune", o.mcl.prune_threshold)->capture_default_str();
  app.add_option("--mcl-max-iterations", o.mcl.max_iterations)->capture_default_str();
  app.add_option("--mcl-epsilon", o.mcl.convergence_epsilon)->capture_default_str();
  app.add_option("--gamma-sample-size", o.cmatch.gamma_sample_size,
                 "Cross-cluster pairs sampled for the node threshold")
      ->capture_default_str();
  app.add_option("--gamma-sample-seed", o.cmatch.gamma_sample_seed)->capture_default_str();

  auto* run = app.add_subcommand("run", "Run designs at one alpha");
  auto* sweep = app.add_subcommand("sweep", "Run designs over a range of alphas");
  std::string alphas = "1..30", designs = "node-mab,cluster-mab,cmatch-mab,node-ab,cluster-ab,cmatch-ab";
  sweep->add_option("--alphas", alphas, "Alpha list, e.g. 1..30 or 1,4,8")->capture_default_str();
  sweep->add_option("--designs", designs, "Design list or 'all'")->capture_default_str();

  auto* plot = app.add_subcommand("plot", "Render SVG figures from a results directory");
  std::string input, figure = "tradeoff", plot_out;
  plot->add_option("--input", input, "Results directory")->required();
  plot->add_option("--figure", figure, "tradeoff or trace")
      ->check(CLI::IsMember({"tradeoff", "trace"}))
      ->capture_default_str();
  plot->add_option("--plot-out", plot_out, "Where to write SVGs (default: the input directory)");

  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset in the LINQS format");
  std::string like = "cora", synth_out;
  std::uint64_t synth_seed = 1;
  synth->add_option("--like", like, "cora, citeseer or webkb")->capture_default_str();
  synth->add_option("--dir", synth_out, "Output directory (default <data-root>/<like>)");
  synth->add_option("--synth-seed", synth_seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (o.threads > 0) omp_set_num_threads(o.threads);
  const std::string cmdline = command_line(argc, argv);

  try {
    if (*run) return cmd_run(o, cmdline);
    if (*sweep) return cmd_sweep(o, alphas, designs, cmdline);
    if (*plot) {
      const fs::path dest = plot_out.empty() ? fs::path(input) : fs::path(plot_out);
      const auto files = emit_plots(input, figure == "trace" ? Figure::Trace : Figure::Tradeoff, dest);
      for (const auto& f : files) std::cout << f.string() << '\n';
      return 0;
    }
    if (*synth) {
      const fs::path root = o.data_root.empty() ? default_data_root() : fs::path(o.data_root);
      const fs::path dir = synth_out.empty() ? root / like : fs::path(synth_out);
      const auto files = write_surrogate_dataset(surrogate_preset(like), synth_seed, dir);
      for (const auto& f : files.content) std::cout << f.string() << '\n';
      return 0;
    }
  } catch (const StaleCacheError& e) {
    std::cerr << "error: " << e.what() << " (pass --recluster to rebuild)\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
