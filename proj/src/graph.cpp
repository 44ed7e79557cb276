#include "syncnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "syncnet/error.hpp"

namespace syncnet {

Graph new_graph(int n, std::span<const Edge> edges) {
  if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one node");
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i < 1 || j < 1 || i > n || j > n) {
      throw Error(Errc::InvalidEdge, "edge {" + std::to_string(i) + "," + std::to_string(j) +
                                         "} out of range 1.." + std::to_string(n));
    }
    if (i == j) throw Error(Errc::InvalidEdge, "self-loop at node " + std::to_string(i));
    g.edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [i, j] : g.edges_) {
    g.adj_[i - 1].push_back(j - 1);
    g.adj_[j - 1].push_back(i - 1);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::has_edge(int i, int j) const {
  const Edge e{std::min(i, j), std::max(i, j)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Matrix laplacian(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  Matrix l(n, n);
  for (auto [i, j] : g.edges()) {
    l(i - 1, j - 1) = -1.0;
    l(j - 1, i - 1) = -1.0;
    l(i - 1, i - 1) += 1.0;
    l(j - 1, j - 1) += 1.0;
  }
  return l;
}

Graph complement(const Graph& g) {
  std::vector<Edge> missing;
  for (int i = 1; i <= g.node_count(); ++i)
    for (int j = i + 1; j <= g.node_count(); ++j)
      if (!g.has_edge(i, j)) missing.emplace_back(i, j);
  return new_graph(g.node_count(), missing);
}

Graph add_edge(const Graph& g, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > g.node_count() || j > g.node_count()) {
    throw Error(Errc::InvalidEdge, "cannot add edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
  }
  if (g.has_edge(i, j)) {
    throw Error(Errc::DuplicateEdge, "edge {" + std::to_string(i) + "," + std::to_string(j) + "} already present");
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.emplace_back(i, j);
  return new_graph(g.node_count(), edges);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.node_count()), -1);
  std::deque<int> queue{source - 1};
  dist[source - 1] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.adjacency()[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> parts;
  std::vector<bool> seen(static_cast<std::size_t>(g.node_count()), false);
  for (int s = 1; s <= g.node_count(); ++s) {
    if (seen[s - 1]) continue;
    std::vector<int> part;
    const auto dist = bfs_distances(g, s);
    for (int v = 0; v < g.node_count(); ++v) {
      if (dist[v] >= 0) {
        seen[v] = true;
        part.push_back(v + 1);
      }
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

Rational average_distance(const Graph& g) {
  const int n = g.node_count();
  if (!is_connected(g)) throw Error(Errc::Disconnected, "average distance needs a connected graph");
  if (n < 2) return {0, 1};
  std::int64_t total = 0;
  for (int s = 1; s <= n; ++s) {
    const auto dist = bfs_distances(g, s);
    for (int t = s; t < n; ++t) total += dist[t];
  }
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t d = std::gcd(total, pairs);
  return {total / d, pairs / d};
}

Clustering clustering(const Graph& g) {
  Clustering c;
  c.per_node.assign(static_cast<std::size_t>(g.node_count()), 0.0);
  for (int v = 0; v < g.node_count(); ++v) {
    const auto& nb = g.adjacency()[v];
    const auto k = nb.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (g.has_edge(nb[a] + 1, nb[b] + 1)) ++links;
    c.per_node[v] = static_cast<double>(links) / (static_cast<double>(k * (k - 1)) / 2.0);
  }
  c.mean = std::accumulate(c.per_node.begin(), c.per_node.end(), 0.0) / g.node_count();
  return c;
}

std::vector<double> betweenness(const Graph& g) {
  const int n = g.node_count();
  if (!is_connected(g)) throw Error(Errc::Disconnected, "betweenness needs a connected graph");
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);

  std::vector<int> order;
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  std::vector<double> sigma(static_cast<std::size_t>(n));
  std::vector<double> delta(static_cast<std::size_t>(n));
  std::vector<int> dist(static_cast<std::size_t>(n));

  for (int s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    sigma[s] = 1.0;
    dist[s] = 0;

    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int w : g.adjacency()[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    // Accumulate dependencies in order of non-increasing distance from s.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d;
  d.reserve(static_cast<std::size_t>(g.node_count()));
  for (const auto& nb : g.adjacency()) d.push_back(static_cast<int>(nb.size()));
  return d;
}

StructuralMetrics structural_metrics(const Graph& g) {
  return {degree_sequence(g), average_distance(g), clustering(g), betweenness(g)};
}

Graph generator_bipartite(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "bipartite generator needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = n + 1; j <= 2 * n; ++j) edges.emplace_back(i, j);
  return new_graph(2 * n, edges);
}

Graph generator_matched_cliques(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "matched-cliques generator needs n >= 2");
  std::vector<Edge> edges;
  for (int offset : {0, n})
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) edges.emplace_back(offset + i, offset + j);
  for (int i = 1; i <= n; ++i) edges.emplace_back(i, n + i);
  return new_graph(2 * n, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  return new_graph(n, edges);
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return new_graph(n, edges);
}

}  // namespace syncnet
