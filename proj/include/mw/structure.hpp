#pragma once

#include <optional>
#include <vector>

#include "mw/graph.hpp"
#include "mw/partition.hpp"
#include "mw/types.hpp"

namespace mw {

constexpr int kRadiusInf = -1;  // "r = inf" marker in radius parameters

// Relational structure over a binary signature: named unary and binary
// relations, vertex ids 1..n.  Binary relations hold ordered pairs.
class BinaryStructure {
 public:
  BinaryStructure() = default;
  explicit BinaryStructure(int n) : n_(n) {}

  int n() const { return n_; }

  void add_unary(PredId name);
  void add_binary(PredId name);
  bool has_unary(PredId name) const { return unary_index(name) >= 0; }
  bool has_binary(PredId name) const { return binary_index(name) >= 0; }
  const std::vector<PredId>& unary_names() const { return unary_names_; }
  const std::vector<PredId>& binary_names() const { return binary_names_; }

  void set_unary(PredId name, Vertex v, bool member);
  bool in_unary(PredId name, Vertex v) const;
  std::vector<Vertex> unary_members(PredId name) const;

  void add_pair(PredId rel, Vertex u, Vertex v);
  bool has_pair(PredId rel, Vertex u, Vertex v) const;
  // True when (u,v) or (v,u) lies in any binary relation.
  bool gaifman_related(Vertex u, Vertex v) const;
  const std::vector<std::vector<Vertex>>& successors(PredId rel) const;
  size_t pair_count(PredId rel) const;

  bool operator==(const BinaryStructure& o) const;

 private:
  int unary_index(PredId name) const;
  int binary_index(PredId name) const;

  int n_ = 0;
  std::vector<PredId> unary_names_;
  std::vector<std::vector<uint8_t>> unary_sets_;  // membership flags, size n+1
  std::vector<PredId> binary_names_;
  std::vector<std::vector<std::vector<Vertex>>> succ_;  // per rel, sorted successor lists

  friend Graph gaifman_graph(const BinaryStructure& s);
};

Graph gaifman_graph(const BinaryStructure& s);

// A binary structure together with a partition whose parts act as the
// pairwise-disjoint part predicates.  Part predicate of the part with
// representative v is part_pred(v).
struct PartitionedStructure {
  BinaryStructure base;
  Partition parts;

  PartitionedStructure() = default;
  PartitionedStructure(BinaryStructure b, Partition p)
      : base(std::move(b)), parts(std::move(p)) {}

  int n() const { return base.n(); }

  // All nonempty unary predicates: named ones first, then part predicates.
  std::vector<PredId> nonempty_unary() const;
  bool in_pred(PredId pred, Vertex v) const;
  std::vector<Vertex> pred_members(PredId pred) const;
};

// Initial partitioned structure for a construction sequence: singleton
// parts, empty binary relations, unary σ-predicates taken from `subject`.
PartitionedStructure initial_structure(const BinaryStructure& subject);

// reach_r: unary predicate names (incl. part predicates) hit by a ball of
// radius r around some vertex of vs; r = kRadiusInf means component reach.
std::vector<PredId> reach_set(const PartitionedStructure& s, const std::vector<Vertex>& vs, int r);
std::vector<PredId> reach_set(const BinaryStructure& s, const std::vector<Vertex>& vs, int r);

// max over vertices of |reach_set(s, v, r)|, nonempty predicates only
int radius_width(const PartitionedStructure& s, int r);

PartitionedStructure apply_merge(const PartitionedStructure& s, Vertex p_rep, Vertex q_rep);
PartitionedStructure apply_resolve(const PartitionedStructure& s, PredId rel, Vertex p_rep,
                                   Vertex q_rep);

// In-place variants used by replay loops; resolve returns the added pairs.
void merge_inplace(PartitionedStructure& s, Vertex p_rep, Vertex q_rep);
std::vector<std::pair<Vertex, Vertex>> resolve_inplace(PartitionedStructure& s, PredId rel,
                                                       Vertex p_rep, Vertex q_rep);

}  // namespace mw
