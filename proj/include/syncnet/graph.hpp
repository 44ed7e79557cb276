#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "syncnet/matrix.hpp"

namespace syncnet {

/// Undirected edge between 1-indexed nodes, normalized so that first < second.
using Edge = std::pair<int, int>;

/// Simple undirected graph on nodes 1..n. Immutable once built; add_edge and
/// complement return new values.
class Graph {
 public:
  Graph() = default;

  int node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Sorted, deduplicated, 1-indexed.
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool has_edge(int i, int j) const;
  /// 0-indexed neighbour lists.
  const std::vector<std::vector<int>>& adjacency() const noexcept { return adj_; }
  int degree(int node) const { return static_cast<int>(adj_.at(node - 1).size()); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

  friend Graph new_graph(int n, std::span<const Edge> edges);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

/// Throws Errc::InvalidEdge on self-loops or out-of-range indices.
Graph new_graph(int n, std::span<const Edge> edges);
inline Graph new_graph(int n, std::initializer_list<Edge> edges) {
  return new_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// L = D - A (positive semidefinite, zero row sums).
Matrix laplacian(const Graph& g);
Graph complement(const Graph& g);
/// Throws Errc::DuplicateEdge if {i,j} is already present.
Graph add_edge(const Graph& g, int i, int j);

/// Components as sorted lists of 1-indexed nodes, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Exact non-negative rational in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Hop-count distances from a 1-indexed source; -1 for unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int source);

/// Mean shortest-path length over unordered pairs. Throws Errc::Disconnected.
Rational average_distance(const Graph& g);

struct Clustering {
  std::vector<double> per_node;
  double mean = 0.0;
};
/// Local clustering; nodes of degree < 2 count as 0.
Clustering clustering(const Graph& g);

/// Brandes betweenness summed over ordered (s, t) pairs, endpoints excluded,
/// unnormalized. Under this convention K_{3,3} scores 2 on every node; the
/// unordered ("load") convention would halve all values. Throws Errc::Disconnected.
std::vector<double> betweenness(const Graph& g);

std::vector<int> degree_sequence(const Graph& g);

struct StructuralMetrics {
  std::vector<int> degree_sequence;
  Rational average_distance;
  Clustering clustering;
  std::vector<double> betweenness;
};
StructuralMetrics structural_metrics(const Graph& g);

/// K_{n,n} on parts {1..n} and {n+1..2n}.
Graph generator_bipartite(int n);
/// Two copies of K_n joined by the matching i <-> n+i.
Graph generator_matched_cliques(int n);
Graph complete_graph(int n);
Graph path_graph(int n);

}  // namespace syncnet
