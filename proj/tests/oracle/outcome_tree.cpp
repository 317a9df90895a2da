#include "oracle/outcome_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nboracle {

namespace {

using netbandit::DesignKind;

struct State {
  std::vector<int> arm;       // -1 unassigned, 0 control, 1 treatment
  std::vector<int> active;
  std::vector<int> explored;
  std::vector<int> cluster_arm;
  double mu[2] = {0, 0};
  double m[2] = {1, 1};
  std::vector<int> rewards;
};

class Enumerator {
 public:
  explicit Enumerator(const Problem& p) : p_(p), adj_(p.n) {
    for (auto [a, b, w] : p.edges) {
      adj_[a].push_back({b, w});
      adj_[b].push_back({a, w});
    }
    for (auto& l : adj_) std::sort(l.begin(), l.end());
    int k = 0;
    for (int c : p.cluster_of) k = std::max(k, c + 1);
    clusters_ = k;
    mate_.assign(k, -1);
    for (auto [a, b] : p.matches) {
      mate_[a] = b;
      mate_[b] = a;
    }
    out_.p_treated.assign(p.n, 0);
    out_.p_active.assign(p.n, 0);
    out_.reward_mean.assign(p.n, 0);
    out_.reward_sq.assign(p.n, 0);
    out_.total_active.assign(p.n + 1, 0);
  }

  Moments run() {
    for (const auto& [arms, w] : assignments()) {
      State s;
      s.arm = arms;
      s.active.assign(p_.n, 0);
      s.explored.assign(p_.n, 0);
      s.cluster_arm.assign(clusters_, -1);
      arrive(0, s, w);
    }
    return out_;
  }

 private:
  // Every equally likely pre-assignment (one empty assignment for bandits).
  std::vector<std::pair<std::vector<int>, double>> assignments() const {
    std::vector<std::pair<std::vector<int>, double>> out;
    const std::vector<int> none(p_.n, -1);
    if (p_.fixed_arms) return {{*p_.fixed_arms, 1.0}};
    switch (p_.design) {
      case DesignKind::NodeAB: {
        // Every subset of floor(n/2) treated nodes.
        std::vector<int> pick(p_.n, 0);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(p_.n / 2), 1);
        std::sort(pick.begin(), pick.end());
        do out.push_back({pick, 1.0});
        while (std::next_permutation(pick.begin(), pick.end()));
        break;
      }
      case DesignKind::ClusterAB: {
        std::vector<int> pick(clusters_, 0);
        std::fill(pick.begin(), pick.begin() + clusters_ / 2, 1);
        std::sort(pick.begin(), pick.end());
        do {
          std::vector<int> arms(p_.n);
          for (std::size_t v = 0; v < p_.n; ++v) arms[v] = pick[p_.cluster_of[v]];
          out.push_back({arms, 1.0});
        } while (std::next_permutation(pick.begin(), pick.end()));
        break;
      }
      case DesignKind::CMatchAB: {
        // One coin per matched pair and per unmatched cluster.
        std::vector<int> units;
        for (int c = 0; c < clusters_; ++c)
          if (mate_[c] < 0 || c < mate_[c]) units.push_back(c);
        for (int mask = 0; mask < (1 << units.size()); ++mask) {
          std::vector<int> carm(clusters_);
          for (std::size_t u = 0; u < units.size(); ++u) {
            const int bit = (mask >> u) & 1;
            carm[units[u]] = bit;
            if (mate_[units[u]] >= 0) carm[mate_[units[u]]] = 1 - bit;
          }
          std::vector<int> arms(p_.n);
          for (std::size_t v = 0; v < p_.n; ++v) arms[v] = carm[p_.cluster_of[v]];
          out.push_back({arms, 1.0});
        }
        break;
      }
      default:
        out.push_back({none, 1.0});
    }
    for (auto& [a, w] : out) w = 1.0 / static_cast<double>(out.size());
    return out;
  }

  int choose(const State& s, int v, std::size_t t) const {
    auto ucb = [&](int a) {
      return s.mu[a] + p_.alpha * std::sqrt(2.0 * std::log(static_cast<double>(t)) / s.m[a]);
    };
    auto bandit = [&] { return ucb(1) > ucb(0) ? 1 : 0; };
    const int c = p_.cluster_of[v];
    switch (p_.design) {
      case DesignKind::NodeMAB:
        return bandit();
      case DesignKind::ClusterMAB:
        return s.cluster_arm[c] >= 0 ? s.cluster_arm[c] : bandit();
      case DesignKind::CMatchMAB:
        if (s.cluster_arm[c] >= 0) return s.cluster_arm[c];
        if (mate_[c] >= 0 && s.cluster_arm[mate_[c]] >= 0) return 1 - s.cluster_arm[mate_[c]];
        return bandit();
      default:
        throw std::logic_error("choose called for an A/B design");
    }
  }

  bool is_bandit() const {
    return !p_.fixed_arms && (p_.design == DesignKind::NodeMAB || p_.design == DesignKind::ClusterMAB ||
                              p_.design == DesignKind::CMatchMAB);
  }

  void arrive(std::size_t k, State s, double w) {
    if (w == 0) return;
    if (k == p_.n) {
      leaf(s, w);
      return;
    }
    const int v = p_.order[k];
    if (is_bandit()) {
      const int a = choose(s, v, k + 1);
      s.arm[v] = a;
      if (p_.design != DesignKind::NodeMAB) s.cluster_arm[p_.cluster_of[v]] = a;
    }
    s.explored[v] = 1;
    const double p = s.arm[v] == 1 ? p_.p_treated : p_.p_control;
    State on = s;
    on.active[v] = 1;
    outbound(k, std::move(on), 0, 1, w * p);
    inbound(k, std::move(s), 0, w * (1 - p));
  }

  // Node is inactive; try neighbors from position idx onward.
  void inbound(std::size_t k, State s, std::size_t idx, double w) {
    if (w == 0) return;
    const int v = p_.order[k];
    for (; idx < adj_[v].size(); ++idx) {
      auto [u, pe] = adj_[v][idx];
      if (!s.explored[u] || !s.active[u] || s.arm[u] == s.arm[v]) continue;
      State on = s;
      on.active[v] = 1;
      outbound(k, std::move(on), 0, 1, w * pe);
      inbound(k, std::move(s), idx + 1, w * (1 - pe));
      return;
    }
    finish(k, std::move(s), 0, w);
  }

  // Node is active; each eligible neighbor is tried once.
  void outbound(std::size_t k, State s, std::size_t idx, int reward, double w) {
    if (w == 0) return;
    const int v = p_.order[k];
    for (; idx < adj_[v].size(); ++idx) {
      auto [u, pe] = adj_[v][idx];
      if (!s.explored[u] || s.active[u] || s.arm[u] == s.arm[v]) continue;
      State on = s;
      on.active[u] = 1;
      outbound(k, std::move(on), idx + 1, reward + 1, w * pe);
      outbound(k, std::move(s), idx + 1, reward, w * (1 - pe));
      return;
    }
    finish(k, std::move(s), reward, w);
  }

  void finish(std::size_t k, State s, int reward, double w) {
    const int v = p_.order[k];
    s.rewards.push_back(reward);
    if (is_bandit()) {
      const int a = s.arm[v];
      s.m[a] += 1;
      s.mu[a] = (reward + (s.m[a] - 1) * s.mu[a]) / s.m[a];
    }
    arrive(k + 1, std::move(s), w);
  }

  void leaf(const State& s, double w) {
    ++out_.leaves;
    out_.total_probability += w;
    int total = 0;
    for (std::size_t v = 0; v < p_.n; ++v) {
      out_.p_treated[v] += w * (s.arm[v] == 1);
      out_.p_active[v] += w * s.active[v];
      total += s.active[v];
    }
    out_.total_active[total] += w;
    for (std::size_t k = 0; k < p_.n; ++k) {
      out_.reward_mean[k] += w * s.rewards[k];
      out_.reward_sq[k] += w * s.rewards[k] * s.rewards[k];
    }
  }

  const Problem& p_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  int clusters_ = 0;
  std::vector<int> mate_;
  Moments out_;
};

}  // namespace

Moments enumerate(const Problem& problem) {
  if (problem.order.size() != problem.n || problem.cluster_of.size() != problem.n)
    throw std::invalid_argument("oracle problem is inconsistent");
  return Enumerator(problem).run();
}

}  // namespace nboracle
