#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netbandit/experiment.hpp"

namespace netbandit {

/// Number formatting used by every CSV: "%.10g"; "NA" for an undefined value.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

/// `dataset,design,alpha,run,arrivals,n_treated,n_control,tte_estimate,tte_error_pct,ra_ratio`
void write_trace_csv(std::ostream& out, const std::string& dataset,
                     const std::vector<CellResult>& cells, double true_tte);

/// `dataset,design,alpha,arrivals,runs,runs_defined,rmse_pct,mean_ra`
void write_aggregate_csv(std::ostream& out, const std::string& dataset,
                         const std::vector<CellResult>& cells);

/// `dataset,design,alpha,runs,rmse_pct,mean_ra` (final checkpoint per cell)
void write_sweep_csv(std::ostream& out, const std::string& dataset,
                     const std::vector<SweepRow>& rows);

/// Parameters, dataset statistics and cache hashes, plus a creation timestamp.
void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const ExperimentConfig& config, const PreparedDataset& data,
                    const std::vector<double>& alphas = {});

/// Minimal reader for the CSV files written above: header-keyed rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws FormatError if absent
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace netbandit
