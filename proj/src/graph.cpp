#include "mw/graph.hpp"

#include <algorithm>

namespace mw {

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

int Graph::m() const {
  size_t total = 0;
  for (const auto& nb : adj_) total += nb.size();
  return static_cast<int>(total / 2);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 1 || u > n() || v < 1 || v > n()) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  MW_CHECK(u >= 1 && u <= n() && v >= 1 && v <= n(), "edge endpoint out of range");
  MW_CHECK(u != v, "self-loop");
  if (has_edge(u, v)) return;
  adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

int Graph::max_degree() const {
  int d = 0;
  for (Vertex v = 1; v <= n(); ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 1; u <= n(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

BitGraph::BitGraph(int n) : n_(n), words_((n + 64) / 64) {
  rows_.assign(static_cast<size_t>(n + 1) * words_, 0);
}

BitGraph BitGraph::from_graph(const Graph& g) {
  BitGraph b(g.n());
  for (Vertex u = 1; u <= g.n(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) b.set_edge(u, v, true);
  return b;
}

Graph BitGraph::to_graph() const {
  Graph g(n_);
  for (Vertex u = 1; u <= n_; ++u)
    for (Vertex v = u + 1; v <= n_; ++v)
      if (has_edge(u, v)) g.add_edge(u, v);
  return g;
}

bool BitGraph::has_edge(Vertex u, Vertex v) const {
  return (row(u)[(v - 1) / 64] >> ((v - 1) % 64)) & 1;
}

void BitGraph::set_edge(Vertex u, Vertex v, bool present) {
  MW_CHECK(u != v, "self-loop");
  uint64_t mu = 1ULL << ((v - 1) % 64), mv = 1ULL << ((u - 1) % 64);
  if (present) {
    row(u)[(v - 1) / 64] |= mu;
    row(v)[(u - 1) / 64] |= mv;
  } else {
    row(u)[(v - 1) / 64] &= ~mu;
    row(v)[(u - 1) / 64] &= ~mv;
  }
}

void BitGraph::flip_pair(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  for (Vertex u : a)
    for (Vertex v : b)
      if (u < v) set_edge(u, v, !has_edge(u, v));
}

std::vector<uint64_t> BitGraph::ball(Vertex v, int r) const {
  std::vector<uint64_t> cur(words_, 0);
  cur[(v - 1) / 64] |= 1ULL << ((v - 1) % 64);
  for (int step = 0; step < r; ++step) {
    std::vector<uint64_t> next = cur;
    for (Vertex u = 1; u <= n_; ++u) {
      if ((cur[(u - 1) / 64] >> ((u - 1) % 64)) & 1) {
        const uint64_t* ru = row(u);
        for (int w = 0; w < words_; ++w) next[w] |= ru[w];
      }
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

bool BitGraph::ball_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const {
  for (int w = 0; w < words_; ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

std::vector<Vertex> BitGraph::mask_vertices(const std::vector<uint64_t>& mask) const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n_; ++v)
    if ((mask[(v - 1) / 64] >> ((v - 1) % 64)) & 1) out.push_back(v);
  return out;
}

bool BitGraph::isolated(Vertex v) const {
  const uint64_t* rv = row(v);
  for (int w = 0; w < words_; ++w)
    if (rv[w]) return false;
  return true;
}

int BitGraph::dist(Vertex u, Vertex v) const {
  if (u == v) return 0;
  auto cur = ball(u, 0);
  for (int d = 1; d <= n_; ++d) {
    auto next = ball(u, d);
    if ((next[(v - 1) / 64] >> ((v - 1) % 64)) & 1) return d;
    if (next == cur) break;
    cur = std::move(next);
  }
  return n_ + 1;
}

}  // namespace mw
