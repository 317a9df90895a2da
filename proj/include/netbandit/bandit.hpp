#pragma once

#include <array>
#include <cstdint>

#include "netbandit/arm.hpp"
#include "netbandit/rng.hpp"

namespace netbandit {

/// Two-arm UCB1 state. Each arm starts as one phantom zero-reward pull
/// (mu_hat = 0, m = 1), so mu_hat[a] == (sum of rewards on a) / m[a] always.
struct BanditState {
  std::array<double, 2> mu_hat{0.0, 0.0};
  std::array<std::uint64_t, 2> pulls{1, 1};
  std::uint64_t t = 0;  // arrivals so far, including the current one once selection starts
  double alpha = 8.0;

  double mean(Arm a) const { return mu_hat[arm_index(a)]; }
  std::uint64_t count(Arm a) const { return pulls[arm_index(a)]; }
};

/// mu_hat + alpha * sqrt(2 ln t / m).
double ucb_score(double mu_hat, std::uint64_t m, double t, double alpha);

enum class TieBreak { LowestIndex, Random };

/// Arm with the larger UCB score. Ties go to Control unless `tie` is Random,
/// in which case a fair coin from `rng` decides. Requires t >= 1.
Arm ucb_select(const BanditState& state, TieBreak tie = TieBreak::LowestIndex,
               CounterRng* rng = nullptr);

/// m[arm] += 1, then mu_hat[arm] = (reward + (m - 1) mu_hat[arm]) / m.
/// The other arm and t are untouched.
BanditState ucb_update(BanditState state, Arm arm, std::uint64_t reward);

}  // namespace netbandit
