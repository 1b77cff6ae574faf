#pragma once

#include <vector>

#include "mw/graph.hpp"
#include "mw/types.hpp"

namespace mw {

// Sentinel-clamped BFS: distances are exact up to cap, anything farther
// (including unreachable) is reported as cap+1.
std::vector<int> bfs_distances(const std::vector<std::vector<Vertex>>& adj,
                               const std::vector<Vertex>& sources, int cap);

std::vector<int> bfs_distances(const Graph& g, const std::vector<Vertex>& sources, int cap);

}  // namespace mw
