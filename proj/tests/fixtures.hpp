#pragma once
// Shared fixtures and independent reference computations for the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <vector>

#include "syncnet/graph.hpp"
#include "syncnet/matrix.hpp"

namespace fixtures {

using syncnet::Edge;
using syncnet::Graph;
using syncnet::Matrix;

// Absolute-tolerance matcher: CHECK(x == within(want, tol)).
struct Within {
  double value;
  double tol;
};
inline Within within(double value, double tol) { return {value, tol}; }
inline bool operator==(double x, const Within& w) { return std::abs(x - w.value) <= w.tol; }
inline std::ostream& operator<<(std::ostream& os, const Within& w) { return os << w.value << " +/- " << w.tol; }

inline Graph k33() {
  return syncnet::new_graph(6, {{1, 2}, {1, 3}, {1, 4}, {5, 2}, {5, 3}, {5, 4}, {6, 2}, {6, 3}, {6, 4}});
}

inline Graph prism() {
  return syncnet::new_graph(6, {{1, 2}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {3, 4}, {3, 6}, {4, 5}, {5, 6}});
}

// Linearized smooth Chua node at the origin.
inline Matrix chua_F() { return {{-2.4, -0.1, 0.0}, {1.0, -1.0, 1.0}, {0.0, 1.0, -1.0}}; }

// Inner coupling whose stable set in sigma splits into two bands.
inline Matrix chua_H_two_band() {
  return {{0.8348, 9.6619, 2.6591}, {0.1002, 0.0694, 0.1005}, {-0.3254, -8.5837, -0.9042}};
}

// Rank-1 coupling e3 * (0.0708, -0.15590, 0.4296).
inline Matrix chua_H_rank1() {
  return {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0708, -0.15590, 0.4296}};
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return syncnet::new_graph(n, edges);
}

// Random connected graph: random spanning tree plus extra edges with probability p.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> parent(1, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  std::bernoulli_distribution coin(p);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return syncnet::new_graph(n, edges);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix m(rows, cols);
  for (auto& x : m.data()) x = nd(rng);
  return m;
}

// All-pairs hop distances by Floyd-Warshall; unreachable = large.
inline std::vector<std::vector<int>> floyd(const Graph& g) {
  const int n = g.node_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [i, j] : g.edges()) d[i - 1][j - 1] = d[j - 1][i - 1] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Betweenness from path counts: v lies on a shortest s-t path iff d(s,v)+d(v,t) = d(s,t),
// and then carries sigma_sv*sigma_vt/sigma_st of the s-t geodesics. Ordered pairs.
inline std::vector<double> betweenness_by_counting(const Graph& g) {
  const int n = g.node_count();
  const auto d = floyd(g);
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    sigma[s][s] = 1.0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[s][a] < d[s][b]; });
    for (int v : order) {
      if (v == s) continue;
      for (int u : g.adjacency()[v])
        if (d[s][u] + 1 == d[s][v]) sigma[s][v] += sigma[s][u];
    }
  }
  std::vector<double> b(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (d[s][v] + d[v][t] == d[s][t]) b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  return b;
}

// exp(a t) by scaling and squaring of a truncated Taylor series.
inline Matrix expm(const Matrix& a, double t) {
  const std::size_t n = a.rows();
  Matrix at = a * t;
  int squarings = 0;
  double norm = at.frobenius_norm();
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  at *= std::ldexp(1.0, -squarings);
  Matrix term = Matrix::identity(n);
  Matrix sum = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * at;
    term *= 1.0 / k;
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace fixtures
