#include "netbandit/bandit.hpp"

#include <cmath>

#include "netbandit/errors.hpp"

namespace netbandit {

double ucb_score(double mu_hat, std::uint64_t m, double t, double alpha) {
  NETBANDIT_REQUIRE(m >= 1 && t >= 1.0, "ucb_score: requires m >= 1 and t >= 1");
  return mu_hat + alpha * std::sqrt(2.0 * std::log(t) / static_cast<double>(m));
}

Arm ucb_select(const BanditState& state, TieBreak tie, CounterRng* rng) {
  NETBANDIT_REQUIRE(state.t >= 1, "ucb_select: t must be incremented before selection");
  const double control = ucb_score(state.mu_hat[0], state.pulls[0], state.t, state.alpha);
  const double treated = ucb_score(state.mu_hat[1], state.pulls[1], state.t, state.alpha);
  if (treated > control) return Arm::Treatment;
  if (control > treated) return Arm::Control;
  if (tie == TieBreak::Random) {
    NETBANDIT_REQUIRE(rng != nullptr, "ucb_select: random tie-break needs an rng");
    return rng->bernoulli(0.5) ? Arm::Treatment : Arm::Control;
  }
  return Arm::Control;
}

BanditState ucb_update(BanditState state, Arm arm, std::uint64_t reward) {
  const auto a = arm_index(arm);
  const auto m = ++state.pulls[a];
  state.mu_hat[a] =
      (static_cast<double>(reward) + static_cast<double>(m - 1) * state.mu_hat[a]) /
      static_cast<double>(m);
  return state;
}

}  // namespace netbandit
