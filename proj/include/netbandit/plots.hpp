#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace netbandit {

struct TradeoffPoint {
  std::string design;
  std::optional<double> alpha;  // empty for A/B designs
  double rmse_pct;
  double ra;
};

/// Scatter of R/A against RMSE%, one colour per design. Within a design the
/// marker opacity increases with alpha.
std::string render_tradeoff_svg(const std::vector<TradeoffPoint>& points, const std::string& title);

struct TraceSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (arrivals, value)
};

/// Line chart, one polyline per series.
std::string render_trace_svg(const std::vector<TraceSeries>& series, const std::string& title,
                             const std::string& y_label);

enum class Figure { Tradeoff, Trace };

/// Tradeoff reads `<input>/sweep.csv` and writes tradeoff.svg; Trace reads
/// `<input>/aggregate.csv` and writes trace_rmse.svg and trace_ra.svg. Returns
/// the files written; empty input writes nothing and prints a warning.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& input_dir, Figure figure,
                                              const std::filesystem::path& out_dir);

}  // namespace netbandit
