#include <doctest.h>

#include <vector>

#include "netbandit/errors.hpp"
#include "netbandit/metrics.hpp"
#include "support/fixtures.hpp"

using namespace netbandit;

namespace {

// Isolated nodes with p_treated = 1 and p_control = 0: treated nodes always
// activate, control nodes never do.
struct Deterministic {
  AttributedGraph g;
  SimulationWorld w;
  WorldConfig cfg{1.0, 0.0, 0};
  explicit Deterministic(std::size_t n) : g(nbtest::make_graph(n, {})), w(n, 0) {}
  void arrive(NodeIndex v, Arm a) { process_arrival(v, a, w, g, cfg); }
};

}  // namespace

TEST_CASE("TTE estimate needs both arms") {
  Deterministic d(4);
  CHECK_FALSE(estimate_tte(d.w).has_value());
  d.arrive(0, Arm::Treatment);
  CHECK_FALSE(estimate_tte(d.w).has_value());
  d.arrive(1, Arm::Control);
  REQUIRE(estimate_tte(d.w).has_value());
  CHECK(*estimate_tte(d.w) == doctest::Approx(1.0));
  d.arrive(2, Arm::Control);
  CHECK(*estimate_tte(d.w) == doctest::Approx(1.0));
  CHECK(reward_action_ratio(d.w) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("reward-action ratio needs an explored node") {
  Deterministic d(1);
  CHECK_THROWS_AS(reward_action_ratio(d.w), ContractViolation);
}

TEST_CASE("RMSE and single-run error are relative to the true TTE") {
  const std::vector<double> est{0.3, 0.5};
  CHECK(rmse_percent(est, 0.4) == doctest::Approx(25.0));
  const std::vector<double> exact{0.4, 0.4, 0.4};
  CHECK(rmse_percent(exact, 0.4) == doctest::Approx(0.0));
  CHECK(error_percent(0.2, 0.4) == doctest::Approx(50.0));
  CHECK(error_percent(0.6, 0.4) == doctest::Approx(50.0));
  CHECK_THROWS_AS(rmse_percent(est, 0.0), ContractViolation);
  CHECK_THROWS_AS(rmse_percent(std::vector<double>{}, 0.4), ContractViolation);
}

TEST_CASE("checkpoints every interval plus the end") {
  Deterministic d(7);
  CheckpointRecorder rec(3);
  for (NodeIndex v = 0; v < 7; ++v) {
    d.arrive(v, v % 2 ? Arm::Control : Arm::Treatment);
    rec.after_arrival(d.w);
  }
  rec.finish(d.w);
  const auto& cps = rec.checkpoints();
  REQUIRE(cps.size() == 3);
  CHECK(cps[0].arrivals == 3);
  CHECK(cps[1].arrivals == 6);
  CHECK(cps[2].arrivals == 7);
  CHECK(cps[2].n_treated == 4);
  CHECK(cps[2].n_control == 3);
  CHECK(cps[2].ra_ratio == doctest::Approx(4.0 / 7.0));

  rec.finish(d.w);
  CHECK(rec.checkpoints().size() == 3);
  CHECK_THROWS_AS(CheckpointRecorder(0), ContractViolation);
}

TEST_CASE("final checkpoint is not duplicated on an interval boundary") {
  Deterministic d(6);
  CheckpointRecorder rec(3);
  for (NodeIndex v = 0; v < 6; ++v) {
    d.arrive(v, Arm::Treatment);
    rec.after_arrival(d.w);
  }
  rec.finish(d.w);
  CHECK(rec.checkpoints().size() == 2);
  CHECK_FALSE(rec.checkpoints().back().tte_estimate.has_value());
}

TEST_CASE("aggregate over runs") {
  auto cp = [](std::size_t n, std::optional<double> e, double ra) {
    Checkpoint c;
    c.arrivals = n;
    c.tte_estimate = e;
    c.ra_ratio = ra;
    return c;
  };
  std::vector<std::vector<Checkpoint>> traces{
      {cp(10, std::nullopt, 0.2), cp(20, 0.3, 0.4)},
      {cp(10, 0.5, 0.4), cp(20, 0.5, 0.6)},
  };
  const auto r = aggregate(traces, 0.4);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.runs == 2);
  CHECK(r.rows[0].runs_defined == 1);
  CHECK(*r.rows[0].rmse_pct == doctest::Approx(25.0));
  CHECK(r.rows[0].mean_ra == doctest::Approx(0.3));
  CHECK(r.final_row().runs_defined == 2);
  CHECK(*r.final_row().rmse_pct == doctest::Approx(25.0));
  CHECK(r.final_row().mean_ra == doctest::Approx(0.5));

  std::vector<std::vector<Checkpoint>> none{{cp(5, std::nullopt, 0.1)}};
  CHECK_FALSE(aggregate(none, 0.4).rows[0].rmse_pct.has_value());

  std::vector<std::vector<Checkpoint>> ragged{{cp(5, 0.1, 0.1)}, {cp(6, 0.1, 0.1)}};
  CHECK_THROWS_AS(aggregate(ragged, 0.4), ContractViolation);
}
