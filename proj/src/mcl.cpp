#include "netbandit/mcl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "netbandit/errors.hpp"

namespace netbandit {

Clustering Clustering::from_assignment(const std::vector<ClusterId>& assignment) {
  std::map<ClusterId, ClusterId> relabel;
  Clustering out;
  out.assignment.resize(assignment.size());
  // Nodes are visited in index order, so first-seen order is smallest-member order.
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    auto [it, fresh] = relabel.emplace(assignment[v], static_cast<ClusterId>(relabel.size()));
    if (fresh) out.clusters.emplace_back();
    out.assignment[v] = it->second;
    out.clusters[it->second].push_back(static_cast<NodeIndex>(v));
  }
  return out;
}

bool validate_partition(const Clustering& clustering, const AttributedGraph& graph) {
  const std::size_t n = graph.num_nodes();
  if (clustering.assignment.size() != n) return false;
  std::vector<int> seen(n, 0);
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    if (clustering.clusters[c].empty()) return false;
    for (NodeIndex v : clustering.clusters[c]) {
      if (v >= n || seen[v]++ != 0) return false;
      if (clustering.assignment[v] != c) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

void MclParams::validate() const {
  if (expansion < 2) throw ConfigError("MCL expansion must be >= 2");
  if (!(inflation > 1.0)) throw ConfigError("MCL inflation must be > 1");
  if (!(prune_threshold >= 0.0)) throw ConfigError("MCL prune threshold must be >= 0");
  if (max_iterations < 1) throw ConfigError("MCL max_iterations must be >= 1");
  if (!(convergence_epsilon > 0.0)) throw ConfigError("MCL convergence epsilon must be > 0");
}

namespace {

struct Entry {
  NodeIndex row;
  double value;
};
using Column = std::vector<Entry>;
using Matrix = std::vector<Column>;

Matrix initial_matrix(const AttributedGraph& g) {
  Matrix m(g.num_nodes());
  for (NodeIndex j = 0; j < g.num_nodes(); ++j) {
    auto& col = m[j];
    col.reserve(g.degree(j) + 1);
    bool self_done = false;
    for (const auto& nb : g.neighbors(j)) {
      if (!self_done && nb.node > j) {
        col.push_back({j, 1.0});
        self_done = true;
      }
      col.push_back({nb.node, 1.0});
    }
    if (!self_done) col.push_back({j, 1.0});
    const double s = static_cast<double>(col.size());
    for (auto& e : col) e.value /= s;
  }
  return m;
}

void inflate_and_prune(Column& col, double inflation, double threshold) {
  double sum = 0.0;
  for (auto& e : col) {
    e.value = std::pow(e.value, inflation);
    sum += e.value;
  }
  double peak = 0.0;
  for (auto& e : col) {
    e.value /= sum;
    peak = std::max(peak, e.value);
  }
  // The column maximum always survives so no column empties out.
  std::erase_if(col, [&](const Entry& e) { return e.value < threshold && e.value != peak; });
  sum = 0.0;
  for (const auto& e : col) sum += e.value;
  for (auto& e : col) e.value /= sum;
}

double column_change(const Column& a, const Column& b) {
  double worst = 0.0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->row < j->row)) {
      worst = std::max(worst, i->value);
      ++i;
    } else if (i == a.end() || j->row < i->row) {
      worst = std::max(worst, j->value);
      ++j;
    } else {
      worst = std::max(worst, std::abs(i->value - j->value));
      ++i;
      ++j;
    }
  }
  return worst;
}

// (a * b)[:, j] with a dense scratch accumulator.
Column multiply_column(const Matrix& a, const Matrix& b, std::size_t j, std::vector<double>& acc,
                       std::vector<NodeIndex>& touched) {
  touched.clear();
  for (const auto& [k, bkj] : b[j]) {
    for (const auto& [i, aik] : a[k]) {
      if (acc[i] == 0.0) touched.push_back(i);
      acc[i] += aik * bkj;
    }
  }
  std::sort(touched.begin(), touched.end());
  Column out;
  out.reserve(touched.size());
  for (NodeIndex i : touched) {
    out.push_back({i, acc[i]});
    acc[i] = 0.0;
  }
  return out;
}

Matrix multiply_parallel(const Matrix& a, const Matrix& b) {
  const std::size_t n = b.size();
  Matrix out(n);
#pragma omp parallel
  {
    std::vector<double> acc(n, 0.0);
    std::vector<NodeIndex> touched;
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
      out[j] = multiply_column(a, b, static_cast<std::size_t>(j), acc, touched);
    }
  }
  return out;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  Matrix out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    std::map<NodeIndex, double> col;
    for (const auto& [k, bkj] : b[j]) {
      for (const auto& [i, aik] : a[k]) col[i] += aik * bkj;
    }
    out[j].reserve(col.size());
    for (const auto& [i, v] : col) out[j].push_back({i, v});
  }
  return out;
}

// Reads clusters off a (near-)idempotent MCL matrix.
std::vector<ClusterId> interpret(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<char> attractor(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& e : m[j]) {
      if (e.row == j && e.value > 0.0) attractor[j] = 1;
    }
  }

  // Union attractors that flow into each other.
  std::vector<NodeIndex> parent(n);
  std::iota(parent.begin(), parent.end(), NodeIndex{0});
  auto find = [&parent](NodeIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (!attractor[j]) continue;
    for (const auto& e : m[j]) {
      if (attractor[e.row]) {
        NodeIndex a = find(e.row), b = find(static_cast<NodeIndex>(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // After full path compression each system is keyed by its smallest attractor.
  std::vector<ClusterId> assignment(n);
  for (std::size_t j = 0; j < n; ++j) {
    NodeIndex best = static_cast<NodeIndex>(n);
    for (const auto& e : m[j]) {
      if (attractor[e.row]) best = std::min(best, find(e.row));
    }
    // No attractor in reach (only possible before convergence): singleton.
    assignment[j] = best == n ? static_cast<ClusterId>(j) : best;
  }
  return assignment;
}

template <typename Multiply>
Clustering run_mcl(const AttributedGraph& graph, const MclParams& params, Multiply multiply,
                   bool parallel) {
  params.validate();
  NETBANDIT_REQUIRE(graph.num_nodes() > 0, "mcl_cluster: graph is empty");
  Matrix m = initial_matrix(graph);
  const auto n = static_cast<std::int64_t>(m.size());

  Clustering result;
  result.converged = false;
  int it = 0;
  while (it < params.max_iterations) {
    ++it;
    Matrix next = multiply(m, m);
    for (int p = 2; p < params.expansion; ++p) next = multiply(next, m);

    double change = 0.0;
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(max : change)
      for (std::int64_t j = 0; j < n; ++j) {
        inflate_and_prune(next[j], params.inflation, params.prune_threshold);
        change = std::max(change, column_change(m[j], next[j]));
      }
    } else {
      for (std::int64_t j = 0; j < n; ++j) {
        inflate_and_prune(next[j], params.inflation, params.prune_threshold);
        change = std::max(change, column_change(m[j], next[j]));
      }
    }
    m = std::move(next);
    if (change < params.convergence_epsilon) {
      result.converged = true;
      break;
    }
  }

  auto clustering = Clustering::from_assignment(interpret(m));
  clustering.converged = result.converged;
  clustering.iterations = it;
  return clustering;
}

}  // namespace

Clustering mcl_cluster(const AttributedGraph& graph, const MclParams& params) {
  return run_mcl(graph, params, multiply_parallel, true);
}

Clustering mcl_cluster_serial(const AttributedGraph& graph, const MclParams& params) {
  return run_mcl(graph, params, multiply_serial, false);
}

}  // namespace netbandit
