#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "netbandit/errors.hpp"
#include "netbandit/world.hpp"
#include "oracle/outcome_tree.hpp"
#include "support/fixtures.hpp"

using namespace netbandit;

namespace {

const WorldConfig kAlways{1.0, 1.0, 0};
const WorldConfig kNever{0.0, 0.0, 0};

}  // namespace

TEST_CASE("ground truth means") {
  WorldConfig c;
  CHECK(ground_truth_outcome_mean(Arm::Treatment, c) == 0.6);
  CHECK(ground_truth_outcome_mean(Arm::Control, c) == 0.2);
  CHECK(c.true_tte() == doctest::Approx(0.4));
  CHECK_THROWS_AS((WorldConfig{0.2, 0.6, 0}.validate()), ConfigError);
  CHECK_THROWS_AS((WorldConfig{1.2, 0.1, 0}.validate()), ConfigError);
}

TEST_CASE("isolated arrivals") {
  auto g = nbtest::make_graph(2, {});
  SimulationWorld w(2, 1);
  auto r = process_arrival(0, Arm::Treatment, w, g, kAlways);
  CHECK(r.direct_activated);
  CHECK(r.reward == 1);
  auto s = process_arrival(1, Arm::Control, w, g, kNever);
  CHECK_FALSE(s.direct_activated);
  CHECK(s.reward == 0);
  CHECK(w.explored_count(Arm::Treatment) == 1);
  CHECK(w.active_count(Arm::Treatment) == 1);
  CHECK(w.active_count(Arm::Control) == 0);
}

TEST_CASE("forced inbound and outbound contagion, one hop") {
  // Star: centre 0, leaves 1 and 2, certain contagion.
  auto g = nbtest::make_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}});
  SimulationWorld w(3, 7);
  process_arrival(1, Arm::Treatment, w, g, kAlways);
  process_arrival(2, Arm::Treatment, w, g, kNever);
  auto r = process_arrival(0, Arm::Control, w, g, kNever);
  CHECK_FALSE(r.direct_activated);
  CHECK(r.inbound_contagion);
  CHECK(r.inbound_source == NodeIndex{1});
  CHECK(r.outbound_activations == std::vector<NodeIndex>{2});
  CHECK(r.reward == 2);
  CHECK(w.active(2));
}

TEST_CASE("contagion does not chain") {
  // Path 0-1-2-3 with certain contagion.
  auto g = nbtest::make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  SimulationWorld w(4, 3);
  process_arrival(1, Arm::Treatment, w, g, kNever);
  process_arrival(2, Arm::Control, w, g, kNever);
  auto r = process_arrival(3, Arm::Treatment, w, g, kAlways);
  CHECK(r.outbound_activations == std::vector<NodeIndex>{2});
  CHECK(r.reward == 2);
  CHECK_FALSE(w.active(1));  // 2 became active but does not pass it on
}

TEST_CASE("same-arm and unexplored neighbours are never tried") {
  auto g = nbtest::make_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}});
  SimulationWorld w(3, 9);
  process_arrival(1, Arm::Control, w, g, kAlways);
  const auto before = w.draws();
  auto r = process_arrival(0, Arm::Control, w, g, kNever);
  CHECK(w.draws() == before + 1);  // the direct draw only
  CHECK(r.reward == 0);
}

TEST_CASE("zero-probability edges still consume a draw") {
  auto g = nbtest::make_graph(2, {{0, 1, 0.0}});
  SimulationWorld w(2, 11);
  process_arrival(0, Arm::Treatment, w, g, kAlways);
  const auto before = w.draws();
  process_arrival(1, Arm::Control, w, g, kNever);
  CHECK(w.draws() == before + 2);
  CHECK_FALSE(w.active(1));
}

TEST_CASE("arrival preconditions") {
  auto g = nbtest::make_graph(2, {});
  SimulationWorld w(2, 1);
  w.preassign(1, Arm::Treatment);
  CHECK_THROWS_AS(process_arrival(1, Arm::Control, w, g, kAlways), ContractViolation);
  process_arrival(0, Arm::Control, w, g, kAlways);
  CHECK_THROWS_AS(process_arrival(0, Arm::Control, w, g, kAlways), ContractViolation);
  CHECK_THROWS_AS(w.preassign(0, Arm::Treatment), ContractViolation);
}

TEST_CASE("oracle reproduces a hand-derived star") {
  // Leaves 1, 2 in control arrive first, centre 0 in treatment last; e.p = 0.5.
  nboracle::Problem p;
  p.n = 3;
  p.edges = {{0, 1, 0.5}, {0, 2, 0.5}};
  p.cluster_of = {0, 1, 2};
  p.order = {1, 2, 0};
  p.fixed_arms = std::vector<int>{1, 0, 0};
  auto m = nboracle::enumerate(p);
  CHECK(m.total_probability == doctest::Approx(1.0));
  // Centre: 0.6 directly, else any active leaf passes contagion at 0.2 * 0.5.
  CHECK(m.p_active[0] == doctest::Approx(0.6 + 0.4 * (1 - 0.9 * 0.9)));
  // Leaf 1: 0.2 directly, else the centre (active w.p. 0.6 + 0.4 * 0.2 * 0.5
  // given leaf 1 is inactive) reaches it with probability 0.5.
  CHECK(m.p_active[1] == doctest::Approx(0.2 + 0.8 * 0.64 * 0.5));
}

TEST_CASE("3-node star: 10,000 replays match the exact outcome tree") {
  auto g = nbtest::make_graph(3, {{0, 1, 0.5}, {0, 2, 0.5}});
  struct Case {
    std::vector<int> arms;
    std::vector<int> order;
  };
  for (const auto& c : {Case{{1, 0, 0}, {1, 2, 0}}, Case{{1, 0, 0}, {0, 1, 2}},
                        Case{{0, 1, 0}, {2, 0, 1}}}) {
    nboracle::Problem p;
    p.n = 3;
    p.edges = {{0, 1, 0.5}, {0, 2, 0.5}};
    p.cluster_of = {0, 1, 2};
    p.order = c.order;
    p.fixed_arms = c.arms;
    const auto exact = nboracle::enumerate(p);

    const int replays = 10000;
    std::vector<double> active(3, 0);
    for (int r = 0; r < replays; ++r) {
      SimulationWorld w(3, 1000 + static_cast<std::uint64_t>(r));
      for (int v : c.order)
        process_arrival(static_cast<NodeIndex>(v), c.arms[v] ? Arm::Treatment : Arm::Control, w, g,
                        WorldConfig{});
      for (int v = 0; v < 3; ++v) active[v] += w.active(v);
    }
    for (int v = 0; v < 3; ++v) {
      const double q = exact.p_active[v];
      const double sigma = std::sqrt(q * (1 - q) / replays);
      CHECK(std::abs(active[v] / replays - q) <= 3 * sigma);
    }
  }
}

TEST_CASE("arrival events are JSON lines") {
  auto g = nbtest::make_graph(2, {{0, 1, 1.0}});
  SimulationWorld w(2, 1);
  process_arrival(0, Arm::Control, w, g, kNever);
  auto r = process_arrival(1, Arm::Treatment, w, g, kAlways);
  std::ostringstream out;
  write_arrival_event(out, 2, r, g);
  const auto text = out.str();
  REQUIRE(text.back() == '\n');
  auto j = nlohmann::json::parse(text);
  CHECK(j["arrival"] == 2);
  CHECK(j["node"] == "n1");
  CHECK(j["arm"] == "treatment");
  CHECK(j["reward"] == 2);
  CHECK(j["outbound"].size() == 1);
}
