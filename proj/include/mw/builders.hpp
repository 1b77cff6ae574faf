#pragma once

#include <iosfwd>
#include <optional>

#include "mw/seq.hpp"

namespace mw {

// A total order on V; rank 1 is smallest.  Orders drive the sparsity
// builders: merges run from the largest vertex down.
class VertexOrder {
 public:
  VertexOrder() = default;
  explicit VertexOrder(std::vector<Vertex> by_rank);
  static VertexOrder identity(int n);

  int n() const { return static_cast<int>(by_rank_.size()); }
  Vertex at_rank(int rank) const { return by_rank_[rank - 1]; }  // 1-based
  int rank(Vertex v) const { return rank_[v]; }
  const std::vector<Vertex>& by_rank() const { return by_rank_; }

 private:
  std::vector<Vertex> by_rank_;
  std::vector<int> rank_;
};

// Repeated min-degree removal.  The returned order places later removals
// lower, so every vertex has at most d neighbors smaller than itself.
std::pair<VertexOrder, int> degeneracy_order(const Graph& g);

// Max number of smaller-ranked neighbors over all vertices.
int back_degree(const Graph& g, const VertexOrder& order);

// All edges resolved among singletons, ascending merges, final negative
// self-resolve.  Radius-r width is at most 1 + D + ... + D^r for max degree D.
ConstructionSequence trivial_sequence(const Graph& g);

// Stagewise frontier construction: radius-1 width <= back_degree(order) + 2.
ConstructionSequence from_degeneracy(const Graph& g, const VertexOrder& order);

// wreach_r(v) = vertices u with a path v->u of length <= r whose vertices
// all rank >= u.
std::vector<std::vector<Vertex>> wreach_sets(const Graph& g, const VertexOrder& order, int r);
int wcol_value(const Graph& g, const VertexOrder& order, int r);

// Merge sequence built from atomic-type classes over the unprocessed
// suffix; radius-r width <= 3 * 2^k for k = wcol_{r+1}(g, order).
MergeSequence from_wcol_order(const Graph& g, const VertexOrder& order, int r);

struct ContractionSequence {
  std::vector<std::pair<Vertex, Vertex>> merges;  // n-1 entries
};

ContractionSequence read_contraction(std::istream& in, int n);
void write_contraction(std::ostream& out, const ContractionSequence& c);

// Baseline heuristic: repeatedly merge the candidate pair minimizing the
// resulting max red degree (lexicographic tie-break).
ContractionSequence greedy_contraction(const Graph& g);

struct ContractionConversion {
  MergeSequence ms;
  int realized_red_degree = 0;
};

// R_t = pairs inside a part or between inhomogeneous parts.
ContractionConversion from_contraction(const Graph& g, const ContractionSequence& c);

struct AtomicComplexity {
  int value = 0;
  bool exact = true;
};

// pi_G(s): max over |S| <= s of |S| + #distinct neighborhood traces on S.
// Exact per size while C(n,size) <= 1e6; sampled lower bound beyond.
AtomicComplexity atomic_complexity(const Graph& g, int s, uint64_t seed = 0);

struct NearTwinGap {
  int gap = 0;
  Vertex u = 0, v = 0;
};

// Minimum |N(u) xor N(v)| over distinct same-side pairs (all pairs when no
// sides are given).
NearTwinGap min_near_twin_gap(const Graph& g,
                              const std::optional<std::vector<uint8_t>>& sides = std::nullopt);

}  // namespace mw
