#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mw/graph.hpp"
#include "mw/structure.hpp"

namespace mw {

enum class OpKind { Merge, ResolvePos, ResolveNeg, ResolveRel };

// Resolve/merge arguments name parts by member vertices, which stays stable
// across merges.
struct ConstructionOp {
  OpKind kind = OpKind::Merge;
  Vertex u = 0, v = 0;
  PredId rel = 0;  // ResolveRel only
};

enum class SeqMode { Graph, Structure };

struct ConstructionSequence {
  SeqMode mode = SeqMode::Graph;
  Graph graph;
  BinaryStructure structure;
  std::vector<ConstructionOp> ops;

  int n() const { return mode == SeqMode::Graph ? graph.n() : structure.n(); }
};

struct ValidationReport {
  bool ok = true;
  int index = -1;  // 1-based op/step index of the first error
  std::string error;
  std::vector<std::string> diagnostics;  // non-fatal findings
};

struct MergeStep {
  Partition parts;
  std::vector<PairKey> resolved;  // cumulative R_t, sorted
};

struct MergeSequence {
  int n = 0;
  std::vector<MergeStep> steps;
};

// Incremental replay of a graph-mode sequence.  Tracks the partition and the
// resolved-pair set R; E and N follow from the graph (Remark-style R view).
class GraphReplay {
 public:
  explicit GraphReplay(const Graph& g);

  // Applies one op; returns an error message on failure (state unchanged on
  // argument errors, polarity conflicts are detected before mutating).
  std::optional<std::string> apply(const ConstructionOp& op);

  const Graph& graph() const { return *g_; }
  int n() const { return g_->n(); }
  const Partition& partition() const { return parts_; }
  int part_count() const { return part_count_; }
  const std::vector<Vertex>& members(Vertex rep) const { return members_[rep]; }
  bool resolved(Vertex u, Vertex v) const;
  const std::vector<std::vector<Vertex>>& r_adjacency() const { return radj_; }
  size_t resolved_count() const { return resolved_count_; }
  size_t resolved_edge_count() const { return resolved_edge_count_; }
  size_t total_pairs() const;
  // Pairs added by the most recent resolve (only when record_added).
  const std::vector<PairKey>& last_added() const { return last_added_; }
  // Members of the smaller side of the most recent merge (pre-merge).
  const std::vector<Vertex>& last_merge_small() const { return last_merge_small_; }

  bool record_added = true;

 private:
  size_t tri_index(Vertex u, Vertex v) const;
  const Graph* g_;
  Partition parts_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<uint64_t> resolved_bits_;
  std::vector<std::vector<Vertex>> radj_;
  size_t resolved_count_ = 0;
  size_t resolved_edge_count_ = 0;
  int part_count_ = 0;
  std::vector<PairKey> last_added_;
  std::vector<Vertex> last_merge_small_;
};

struct ValidateOptions {
  // Remark-style part-pair homogeneity reporting is O(n^2) per snapshot, so
  // it is skipped above this size unless forced.
  bool homogeneity_diagnostics = true;
  int diagnostics_max_n = 150;
};

ValidationReport validate_construction(const ConstructionSequence& cs,
                                       const ValidateOptions& opt = {});

// Max over snapshots of the radius-r width of (partition, R); r = kRadiusInf
// for unbounded radius.
int width_of_construction(const ConstructionSequence& cs, int r);

MergeSequence construction_to_merge(const ConstructionSequence& cs);
ConstructionSequence merge_to_construction(const MergeSequence& ms, const Graph& g);

ValidationReport validate_merge(const MergeSequence& ms, const Graph& g);

// Def-style width: max over t >= 2 of the radius-r width of (P_{t-1}, R_t).
int width_of_merge(const MergeSequence& ms, int r);

// Drops ineffective resolves, then postpones resolves past merges they do
// not touch.  Keeps the final snapshot; never increases the radius-1 width.
ConstructionSequence normalize_effective(const ConstructionSequence& cs);

// Drops steps whose partition repeats the previous one (keeps the last), so
// the result has at most n steps; width is preserved.
MergeSequence compact_merge(const MergeSequence& ms);

// Radius-r width of a single (partition, resolved pairs) snapshot.
int pair_width(int n, const Partition& parts, const std::vector<PairKey>& pairs, int r);

// Structure-mode replay into explicit partitioned structures.
std::vector<PartitionedStructure> replay_structure(const ConstructionSequence& cs);

// Graph-mode sequence lifted to structure mode over signature {E, N}, one
// resolve per direction.
ConstructionSequence lift_to_structure(const ConstructionSequence& cs);

// Subject structure of a graph: E holds both orders of each edge, N both
// orders of each non-edge.
BinaryStructure graph_subject_structure(const Graph& g);

// File formats.
ConstructionSequence read_construction(std::istream& in, const Graph& g);
ConstructionSequence read_construction(std::istream& in, const BinaryStructure& s);
void write_construction(std::ostream& out, const ConstructionSequence& cs);
MergeSequence read_merge(std::istream& in, int n);
void write_merge(std::ostream& out, const MergeSequence& ms);

}  // namespace mw
