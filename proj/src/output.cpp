#include "netbandit/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "netbandit/errors.hpp"

namespace netbandit {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("NA");
}

namespace {

std::string alpha_field(const CellResult& cell) {
  return is_bandit(cell.design) ? format_number(cell.alpha) : std::string("NA");
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::string& dataset,
                     const std::vector<CellResult>& cells, double true_tte) {
  out << "dataset,design,alpha,run,arrivals,n_treated,n_control,tte_estimate,tte_error_pct,ra_ratio\n";
  for (const auto& cell : cells) {
    for (std::size_t s = 0; s < cell.runs.size(); ++s) {
      for (const auto& c : cell.runs[s].checkpoints) {
        std::optional<double> err;
        if (c.tte_estimate) err = error_percent(*c.tte_estimate, true_tte);
        out << dataset << ',' << to_string(cell.design) << ',' << alpha_field(cell) << ',' << s + 1
            << ',' << c.arrivals << ',' << c.n_treated << ',' << c.n_control << ','
            << format_number(c.tte_estimate) << ',' << format_number(err) << ','
            << format_number(c.ra_ratio) << '\n';
      }
    }
  }
}

void write_aggregate_csv(std::ostream& out, const std::string& dataset,
                         const std::vector<CellResult>& cells) {
  out << "dataset,design,alpha,arrivals,runs,runs_defined,rmse_pct,mean_ra\n";
  for (const auto& cell : cells) {
    for (const auto& r : cell.aggregate.rows) {
      out << dataset << ',' << to_string(cell.design) << ',' << alpha_field(cell) << ','
          << r.arrivals << ',' << cell.aggregate.runs << ',' << r.runs_defined << ','
          << format_number(r.rmse_pct) << ',' << format_number(r.mean_ra) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const std::string& dataset,
                     const std::vector<SweepRow>& rows) {
  out << "dataset,design,alpha,runs,rmse_pct,mean_ra\n";
  for (const auto& r : rows) {
    out << dataset << ',' << to_string(r.design) << ',' << format_number(r.alpha) << ',' << r.runs
        << ',' << format_number(r.final_row.rmse_pct) << ',' << format_number(r.final_row.mean_ra)
        << '\n';
  }
}

void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const ExperimentConfig& config, const PreparedDataset& data,
                    const std::vector<double>& alphas) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["dataset"] = data.name;
  auto designs = nlohmann::json::array();
  for (DesignKind d : config.designs) designs.push_back(std::string(to_string(d)));
  j["designs"] = designs;
  if (alphas.empty()) {
    j["alpha"] = config.alpha;
  } else {
    j["alphas"] = alphas;
  }
  j["runs"] = config.runs;
  j["interval"] = config.interval;
  j["p_treated"] = config.p_treated;
  j["p_control"] = config.p_control;
  j["true_tte"] = config.world().true_tte();
  j["seed"] = config.seed;
  j["explore_fraction"] = config.explore_fraction;
  j["tie_break"] = config.tie == TieBreak::Random ? "random" : "lowest";
  j["graph"] = {{"nodes", data.graph.num_nodes()},
                {"edges", data.graph.num_edges()},
                {"dimension", data.graph.dimension()},
                {"dropped_unknown_endpoint_lines", data.load_stats.unknown_endpoint_lines},
                {"dropped_self_loop_lines", data.load_stats.self_loop_lines},
                {"duplicate_lines", data.load_stats.duplicate_lines}};
  j["clustering"] = {{"clusters", data.clustering.num_clusters()},
                     {"converged", data.clustering.converged},
                     {"iterations", data.clustering.iterations}};
  j["cmatch"] = {{"gamma", data.cmatch.thresholds.gamma},
                 {"beta", data.cmatch.thresholds.beta},
                 {"gamma_sample_population", data.cmatch.gamma_sample.population},
                 {"gamma_sample_requested", data.cmatch.gamma_sample.requested},
                 {"gamma_sample_seed", data.cmatch.gamma_sample.seed},
                 {"gamma_sample_exhaustive", data.cmatch.gamma_sample.exhaustive},
                 {"matched_node_pairs", data.cmatch.matched_node_pairs},
                 {"matched_cluster_pairs", data.cmatch.match.num_pairs()}};
  j["content_hash"] = hex64(data.content_hash);
  j["cache_key"] = hex64(data.cache_key);
  j["from_cache"] = data.from_cache;

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  j["created_at"] = ts.str();

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
  };
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto row = split(line);
    if (row.size() != t.header.size())
      throw ParseError(path.string(), lineno, "expected " + std::to_string(t.header.size()) + " fields");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace netbandit
