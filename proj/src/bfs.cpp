#include "mw/bfs.hpp"

#include <deque>

namespace mw {

std::vector<int> bfs_distances(const std::vector<std::vector<Vertex>>& adj,
                               const std::vector<Vertex>& sources, int cap) {
  int n = static_cast<int>(adj.size()) - 1;
  std::vector<int> dist(n + 1, cap + 1);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    MW_CHECK(s >= 1 && s <= n, "bfs source out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (dist[u] >= cap) continue;
    for (Vertex w : adj[u]) {
      if (dist[w] > dist[u] + 1) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> bfs_distances(const Graph& g, const std::vector<Vertex>& sources, int cap) {
  return bfs_distances(g.adjacency(), sources, cap);
}

}  // namespace mw
