#include "oracle/dense_mcl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace nboracle {

namespace {

using Matrix = std::vector<std::vector<double>>;  // [row][col]

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

void normalize_columns(Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += m[i][j];
    if (s > 0)
      for (std::size_t i = 0; i < n; ++i) m[i][j] /= s;
  }
}

}  // namespace

std::optional<std::vector<int>> dense_mcl(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                          int expansion, double inflation, double prune, int max_iter,
                                          double eps) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (auto [a, b] : edges) m[a][b] = m[b][a] = 1;
  normalize_columns(m);

  for (int it = 0; it < max_iter; ++it) {
    Matrix next = m;
    for (int e = 1; e < expansion; ++e) next = multiply(next, m);
    for (auto& row : next)
      for (double& x : row) x = std::pow(x, inflation);
    normalize_columns(next);
    for (std::size_t j = 0; j < n; ++j) {
      double mx = 0;
      for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, next[i][j]);
      for (std::size_t i = 0; i < n; ++i)
        if (next[i][j] < prune && next[i][j] != mx) next[i][j] = 0;
    }
    normalize_columns(next);
    double change = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) change = std::max(change, std::abs(next[i][j] - m[i][j]));
    m = std::move(next);
    if (change < eps) break;
  }

  // Attractors and the columns each one holds.
  std::vector<int> label(n, -1);
  std::vector<int> attractor_group(n, -1);
  int groups = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (m[a][a] <= 0 || attractor_group[a] >= 0) continue;
    // Attractors that share a column with a belong to the same system.
    std::vector<std::size_t> stack{a};
    attractor_group[a] = groups;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y) {
        if (m[y][y] <= 0 || attractor_group[y] >= 0) continue;
        bool linked = m[x][y] > 0 || m[y][x] > 0;
        if (linked) {
          attractor_group[y] = groups;
          stack.push_back(y);
        }
      }
    }
    ++groups;
  }
  for (std::size_t j = 0; j < n; ++j) {
    int g = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i][j] <= 0 || attractor_group[i] < 0) continue;
      if (g >= 0 && g != attractor_group[i]) return std::nullopt;
      g = attractor_group[i];
    }
    if (g < 0) return std::nullopt;
    label[j] = g;
  }
  // Renumber by smallest member.
  std::map<int, int> remap;
  std::vector<int> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto it = remap.find(label[v]);
    if (it == remap.end()) it = remap.emplace(label[v], static_cast<int>(remap.size())).first;
    out[v] = it->second;
  }
  return out;
}

}  // namespace nboracle
