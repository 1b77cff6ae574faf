#pragma once

#include <map>

#include "mw/modelcheck.hpp"

namespace mw {

// phi(G): vertices of s, an edge {u,v} whenever phi(u,v) or phi(v,u) holds
// (the unordered reading of an interpretation; asymmetric phi is noted by
// the caller via interpret_is_symmetric).
Graph interpret_graph(const BinaryStructure& s, const FormulaPtr& phi);
bool interpret_is_symmetric(const BinaryStructure& s, const FormulaPtr& phi);

struct DeriveOptions {
  std::vector<int> radii = {1, 2};
  // Pairs off R_t sampled per step for the default-connection check; the
  // full quadratic check sits behind full_check.
  int sample_pairs_per_step = 24;
  bool full_check = false;
  uint64_t seed = 0;
};

struct InterpretationReport {
  Graph interpreted;
  MergeSequence derived;
  std::vector<int> part_counts;        // |P_t| per step (before the final step)
  std::map<int, int> widths;           // radius -> width of the derived sequence
  ValidationReport verdict;            // validate_merge against interpreted
  bool symmetric = true;
  int final_type_count = 0;            // distinct ltp_{2,q} on A_m
  size_t checked_pairs = 0;            // default-connection samples verified
  std::string failed_claim;            // empty when everything holds
};

// Local-type partitions P_t and short-distance pairs R_t along a
// structure-mode construction sequence yield a merge sequence of phi(A).
InterpretationReport derive_merge_sequence(const ConstructionSequence& cs,
                                           const FormulaPtr& phi,
                                           const DeriveOptions& opt = {});

}  // namespace mw
