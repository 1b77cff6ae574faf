#pragma once

#include <optional>

#include "mw/seq.hpp"

namespace mw {

struct FlipSpec {
  Partition parts;
  std::vector<PairKey> flipped;  // unordered part-representative pairs, A=B allowed
};

// E(G') = E(G) symmetric-difference the flipped part pairs (no self-loops).
Graph apply_flips(const Graph& g, const FlipSpec& f);

// The P-flip witnessing E(G') <= R: flips exactly the part pairs whose
// unresolved remainder consists of edges.  Throws when some part pair is
// inhomogeneous off R (names the offending pair).
FlipSpec flip_from_resolution(const Graph& g, const Partition& parts,
                              const std::vector<PairKey>& resolved);

struct RestrainedFlipStep {
  Partition parts;                 // refining over t
  std::vector<PairKey> restraint;  // shrinking over t
  BitGraph flip;                   // a P_t-flip of G with E(G_t) <= R_t
};

struct RestrainedFlipSequence {
  int n = 0;
  std::vector<RestrainedFlipStep> steps;
};

// Reversal correspondence; an input whose first resolved set is nonempty is
// first extended with a plain singleton step so the final restraint is
// empty.  Width is preserved at every radius.
RestrainedFlipSequence merge_to_restrained_flip(const Graph& g, const MergeSequence& ms);

// Boundary partitions, refinement, monotone restraints, empty final
// restraint, each flip graph a P_t-flip of g within its restraint.  A first
// restraint short of all pairs is reported as a diagnostic only.
ValidationReport validate_rfs(const RestrainedFlipSequence& rfs, const Graph& g);

// max over t in [m-1] of the radius-r width of (P_{t+1}, R_t)
int width_of_rfs(const RestrainedFlipSequence& rfs, int r);

// Per-step widths of (P_t, R_{t-1}) for t = 2..m (index t-2 in the result),
// the quantity bounding flipper's announced flip sizes.
std::vector<int> rfs_step_widths(const RestrainedFlipSequence& rfs, int r);

struct FlipperMove {
  Partition flip_partition;  // the announced partition Q
  int flip_parts = 0;        // |Q|, measured
  BitGraph graph;            // G'_t
  int width_s = 0;           // width of (P_t, R_{t-1}) at the strategy radius
  int certified_bound = 0;   // 4^s, or the counted trace bound for poly
};

// Standard strategy: mixes E(G_t) on parts reached within 2r-1 in
// (V, R_{t-1}) with E(G) elsewhere; |Q| <= 4^s.
FlipperMove flipper_step(const Graph& g, const RestrainedFlipSequence& rfs, int t, Vertex v,
                         int r, const std::vector<int>* widths = nullptr);

// Neighborhood-trace strategy: |Q| <= |Q_2r| + #distinct traces.
FlipperMove flipper_step_poly(const Graph& g, const RestrainedFlipSequence& rfs, int t,
                              Vertex v, int r, const std::vector<int>* widths = nullptr);

enum class RunnerKind { Random, GreedyFar };

struct GameRound {
  int flip_parts = 0;
  Vertex runner = 0;
  int width_s = 0;
};

struct GameTranscript {
  Vertex start = 0;
  std::vector<GameRound> rounds;
  bool flipper_won = false;
  int max_flip_parts = 0;
};

struct GameOptions {
  RunnerKind runner = RunnerKind::Random;
  uint64_t seed = 0;
  bool poly_strategy = false;
  // Assert the ball-containment invariant every round.
  bool check_invariant = true;
};

GameTranscript play_game(const Graph& g, const RestrainedFlipSequence& rfs, int r,
                         const GameOptions& opt = {});

struct ExhaustiveResult {
  bool flipper_always_wins = false;
  int max_flip_parts = 0;
  int deepest_round = 0;
};

// Full game-tree search over all runner plays against the fixed flipper
// strategy (guarded to n <= 12).
ExhaustiveResult exhaustive_game(const Graph& g, const RestrainedFlipSequence& rfs, int r,
                                 bool poly_strategy = false);

}  // namespace mw
