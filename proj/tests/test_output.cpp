#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "netbandit/errors.hpp"
#include "netbandit/output.hpp"
#include "netbandit/plots.hpp"
#include "support/fixtures.hpp"

using namespace netbandit;

namespace {

std::size_t occurrences(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
  return n;
}

CellResult make_cell(DesignKind d, double alpha) {
  CellResult cell;
  cell.design = d;
  cell.alpha = alpha;
  Checkpoint a{10, std::nullopt, 0.3, 10, 0};
  Checkpoint b{20, 0.35, 0.45, 12, 8};
  RunTrace t;
  t.checkpoints = {a, b};
  cell.runs = {t, t};
  std::vector<std::vector<Checkpoint>> traces{t.checkpoints, t.checkpoints};
  cell.aggregate = aggregate(traces, 0.4);
  return cell;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(format_number(std::optional<double>{}) == "NA");
  CHECK(format_number(std::optional<double>{8.0}) == "8");
}

TEST_CASE("trace and aggregate CSVs") {
  const std::vector<CellResult> cells{make_cell(DesignKind::NodeAB, 8),
                                      make_cell(DesignKind::CMatchMAB, 8)};
  const auto dir = nbtest::scratch("output_csv");
  {
    std::ofstream out(dir / "trace.csv");
    write_trace_csv(out, "toy", cells, 0.4);
  }
  {
    std::ofstream out(dir / "aggregate.csv");
    write_aggregate_csv(out, "toy", cells);
  }
  const auto trace = read_csv(dir / "trace.csv");
  CHECK(trace.header == std::vector<std::string>{"dataset", "design", "alpha", "run", "arrivals",
                                                 "n_treated", "n_control", "tte_estimate",
                                                 "tte_error_pct", "ra_ratio"});
  REQUIRE(trace.rows.size() == 8);
  CHECK(trace.rows[0][trace.column("design")] == "node-ab");
  CHECK(trace.rows[0][trace.column("alpha")] == "NA");
  CHECK(trace.rows[0][trace.column("run")] == "1");
  CHECK(trace.rows[0][trace.column("tte_estimate")] == "NA");
  CHECK(trace.rows[0][trace.column("tte_error_pct")] == "NA");
  CHECK(trace.rows[1][trace.column("tte_error_pct")] == "12.5");
  CHECK(trace.rows[4][trace.column("alpha")] == "8");

  const auto agg = read_csv(dir / "aggregate.csv");
  CHECK(agg.header == std::vector<std::string>{"dataset", "design", "alpha", "arrivals", "runs",
                                               "runs_defined", "rmse_pct", "mean_ra"});
  REQUIRE(agg.rows.size() == 4);
  CHECK(agg.rows[0][agg.column("rmse_pct")] == "NA");
  CHECK(agg.rows[1][agg.column("rmse_pct")] == "12.5");
  CHECK(agg.rows[1][agg.column("runs_defined")] == "2");
  CHECK_THROWS_AS(agg.column("nope"), FormatError);
  CHECK_THROWS_AS(read_csv(dir / "missing.csv"), IoError);
}

TEST_CASE("sweep CSV") {
  std::vector<SweepRow> rows{{DesignKind::NodeMAB, 3.0, 5, {100, 5, 12.0, 0.5}},
                             {DesignKind::NodeAB, std::nullopt, 5, {100, 5, 4.0, 0.4}}};
  std::ostringstream out;
  write_sweep_csv(out, "toy", rows);
  CHECK(out.str() ==
        "dataset,design,alpha,runs,rmse_pct,mean_ra\n"
        "toy,node-mab,3,5,12,0.5\n"
        "toy,node-ab,NA,5,4,0.4\n");
}

TEST_CASE("manifest records parameters and hashes") {
  PreparedDataset data;
  data.name = "toy";
  data.graph = nbtest::make_graph(3, {{0, 1, 0.5}});
  data.clustering = Clustering::from_assignment({0, 0, 1});
  data.content_hash = 0xabcdef;
  ExperimentConfig c;
  c.designs = {DesignKind::NodeMAB, DesignKind::ClusterAB};
  const auto path = nbtest::scratch("output_manifest") / "manifest.json";
  write_manifest(path, "run", c, data);
  const auto j = nlohmann::json::parse(nbtest::read_file(path));
  CHECK(j["command"] == "run");
  CHECK(j["designs"].size() == 2);
  CHECK(j["alpha"] == 8.0);
  CHECK(j["graph"]["nodes"] == 3);
  CHECK(j["clustering"]["clusters"] == 2);
  CHECK(j["content_hash"] == "0000000000abcdef");
  CHECK(j.contains("created_at"));
  CHECK(j["true_tte"].get<double>() == doctest::Approx(0.4));

  write_manifest(path, "sweep", c, data, {1, 2, 3});
  const auto k = nlohmann::json::parse(nbtest::read_file(path));
  CHECK(k["alphas"].size() == 3);
  CHECK_FALSE(k.contains("alpha"));
}

TEST_CASE("tradeoff plot has one marker per point") {
  std::vector<TradeoffPoint> pts{{"node-mab", 1.0, 60, 0.6},
                                 {"node-mab", 30.0, 30, 0.5},
                                 {"node-ab", std::nullopt, 5, 0.4}};
  const auto svg = render_tradeoff_svg(pts, "t <1>");
  CHECK(occurrences(svg, "class=\"marker\"") == 3);
  CHECK(svg.find("t &lt;1&gt;") != std::string::npos);
  CHECK(svg.find("fill-opacity=\"0.2\"") != std::string::npos);
  CHECK(occurrences(svg, "fill-opacity=\"1\"") == 2);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("trace plot has one polyline per series") {
  std::vector<TraceSeries> s{{"a", {{1, 2}, {2, 3}}}, {"b", {{1, 1}}}};
  const auto svg = render_trace_svg(s, "x", "y");
  CHECK(occurrences(svg, "class=\"series\"") == 2);
}

TEST_CASE("plots from result directories") {
  const auto dir = nbtest::scratch("output_plots");
  nbtest::write_file(dir / "sweep.csv",
                     "dataset,design,alpha,runs,rmse_pct,mean_ra\n"
                     "toy,node-mab,1,5,50,0.6\n"
                     "toy,node-mab,2,5,40,0.55\n"
                     "toy,node-ab,NA,5,5,0.4\n"
                     "toy,cmatch-ab,NA,5,NA,0.4\n");
  auto written = emit_plots(dir, Figure::Tradeoff, dir / "out");
  REQUIRE(written.size() == 1);
  CHECK(occurrences(nbtest::read_file(written[0]), "class=\"marker\"") == 3);

  const std::vector<CellResult> cells{make_cell(DesignKind::NodeAB, 8),
                                      make_cell(DesignKind::NodeMAB, 8)};
  {
    std::ofstream out(dir / "aggregate.csv");
    write_aggregate_csv(out, "toy", cells);
  }
  written = emit_plots(dir, Figure::Trace, dir / "out");
  REQUIRE(written.size() == 2);
  CHECK(written[0].filename() == "trace_rmse.svg");
  const auto ra = nbtest::read_file(written[1]);
  CHECK(occurrences(ra, "class=\"series\"") == 2);
  CHECK(ra.find("node-mab (alpha=8)") != std::string::npos);

  const auto empty = nbtest::scratch("output_plots_empty");
  nbtest::write_file(empty / "sweep.csv", "dataset,design,alpha,runs,rmse_pct,mean_ra\n");
  CHECK(emit_plots(empty, Figure::Tradeoff, empty).empty());
  CHECK_THROWS_AS(emit_plots(nbtest::scratch("output_plots_none"), Figure::Trace, empty), IoError);
}
