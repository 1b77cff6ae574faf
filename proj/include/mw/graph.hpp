#pragma once

#include <vector>

#include "mw/types.hpp"

namespace mw {

// Simple undirected graph over vertices 1..n with sorted neighbor lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n + 1) {}
  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int n() const { return static_cast<int>(adj_.size()) - 1; }
  int m() const;
  bool has_edge(Vertex u, Vertex v) const;
  void add_edge(Vertex u, Vertex v);  // ignores duplicates, rejects loops
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, sorted
  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
};

// Dense bitset-backed graph used by the flip machinery, where whole
// part-pair complements are taken at once.
class BitGraph {
 public:
  BitGraph() = default;
  explicit BitGraph(int n);
  static BitGraph from_graph(const Graph& g);
  Graph to_graph() const;

  int n() const { return n_; }
  bool has_edge(Vertex u, Vertex v) const;
  void set_edge(Vertex u, Vertex v, bool present);
  void flip_pair(const std::vector<Vertex>& a, const std::vector<Vertex>& b);

  // Ball of radius r around each seed, as a vertex bitmask over words.
  std::vector<uint64_t> ball(Vertex v, int r) const;
  bool ball_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;
  std::vector<Vertex> mask_vertices(const std::vector<uint64_t>& mask) const;
  bool isolated(Vertex v) const;
  int dist(Vertex u, Vertex v) const;  // n+1 when unreachable

  bool operator==(const BitGraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> rows_;  // row v at rows_[v*words_ .. ), bit u-1
  uint64_t* row(Vertex v) { return rows_.data() + static_cast<size_t>(v) * words_; }
  const uint64_t* row(Vertex v) const { return rows_.data() + static_cast<size_t>(v) * words_; }
};

}  // namespace mw
