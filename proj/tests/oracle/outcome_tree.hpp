#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "netbandit/designs.hpp"

namespace nboracle {

/// A small experiment to enumerate exactly. Written without the library's
/// simulation code so it can serve as an independent reference.
struct Problem {
  std::size_t n = 0;
  /// Undirected edges with their contagion probability.
  std::vector<std::tuple<int, int, double>> edges;
  std::vector<int> cluster_of;                 // node -> cluster
  std::vector<std::pair<int, int>> matches;    // matched cluster pairs
  std::vector<int> order;                      // arrival order
  double p_treated = 0.6;
  double p_control = 0.2;
  double alpha = 8.0;
  netbandit::DesignKind design = netbandit::DesignKind::NodeAB;
  /// Overrides the design: every node's arm is fixed (1 = treatment).
  std::optional<std::vector<int>> fixed_arms;
};

/// Exact first and second moments of the quantities a replay can observe.
struct Moments {
  std::vector<double> p_treated;        // P(node v is in treatment)
  std::vector<double> p_active;         // P(node v ends active)
  std::vector<double> reward_mean;      // E[reward at arrival k]
  std::vector<double> reward_sq;        // E[reward^2 at arrival k]
  std::vector<double> total_active;     // P(k nodes end active), k = 0..n
  double total_probability = 0;
  std::size_t leaves = 0;
};

Moments enumerate(const Problem& problem);

}  // namespace nboracle
