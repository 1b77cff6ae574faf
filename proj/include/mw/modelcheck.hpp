#pragma once

#include <memory>

#include "mw/seq.hpp"
#include "mw/witness.hpp"

namespace mw {

struct MCStats {
  size_t merges = 0;
  size_t resolves = 0;
  size_t noop_resolves = 0;
  size_t ltp_classes_max = 0;
  double total_seconds = 0;
  std::vector<double> step_seconds;  // filled when collect_timings
};

struct MCOptions {
  // Recompute every stored local type directly after each op and compare.
  bool verify = false;
  ViolationPolicy policy = ViolationPolicy::Throw;
  bool collect_timings = false;
  std::ostream* log = nullptr;
};

// Maintains per-vertex local (1,q)-types along a structure-mode
// construction sequence: merges rewrite the stored types in place, resolves
// recompute them on the new structure through the sigma*-reduct pipeline
// and the witness cache.
class ModelChecker {
 public:
  ModelChecker(const BinaryStructure& subject, int q, WitnessCache& cache,
               MCOptions opt = {});
  // Starts from a caller-provided initial partitioned structure.
  ModelChecker(PartitionedStructure s0, int q, WitnessCache& cache, MCOptions opt = {});

  void step(const ConstructionOp& op);

  const PartitionedStructure& current() const { return cur_; }
  const std::vector<LtpId>& ltps() const { return ltp_; }
  int q() const { return q_; }
  const MCStats& stats() const { return stats_; }

  // tp_{1,q} for every vertex of the current structure via the cache.
  std::vector<TypeId> current_types();

 private:
  void init_types();
  void step_merge(Vertex u, Vertex v);
  void step_resolve(PredId rel, Vertex u, Vertex v);
  void verify_ltps(const char* where);
  TypeContext& ctx();

  PartitionedStructure cur_;
  int q_;
  WitnessCache& cache_;
  MCOptions opt_;
  std::vector<LtpId> ltp_;  // indexed 1..n
  std::unique_ptr<TypeContext> ctx_;
  MCStats stats_;
  int step_no_ = 0;
};

// Defining set of phi(x) (at most one free variable) over the subject of a
// structure-mode construction sequence; q is the quantifier rank of phi.
std::vector<Vertex> run_defining_set(const ConstructionSequence& cs, const FormulaPtr& phi,
                                     WitnessCache& cache, const MCOptions& opt = {},
                                     MCStats* stats_out = nullptr);

// Plain-FO sentence over a graph with a graph-mode construction sequence:
// normalize, lift to {E,N} structure mode, run, report truth.
bool model_check_sentence(const Graph& g, const ConstructionSequence& cs,
                          const FormulaPtr& sentence, WitnessCache& cache,
                          const MCOptions& opt = {}, MCStats* stats_out = nullptr);

// One maintenance pass at q = max rank answers a whole sentence batch.
std::vector<bool> model_check_sentences(const Graph& g, const ConstructionSequence& cs,
                                        const std::vector<FormulaPtr>& sentences,
                                        WitnessCache& cache, const MCOptions& opt = {},
                                        MCStats* stats_out = nullptr);

// Direct recursive evaluation over all assignments (the oracle).
bool naive_evaluate(const BinaryStructure& s, const FormulaPtr& sentence);
std::vector<Vertex> naive_defining_set(const BinaryStructure& s, const FormulaPtr& phi);

// The distance-atom rewriting of a resolve step between the members of the
// parts with representatives p_rep and q_rep: returns a pre-resolve formula
// equivalent to the post-resolve atom, with no radius increase.
FormulaPtr rewrite_distance_atom(TypeContext& pre, const PartitionedStructure& s,
                                 Vertex p_rep, Vertex q_rep, const FormulaPtr& atom);

}  // namespace mw
