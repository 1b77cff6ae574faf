#include "mw/flip.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "mw/bfs.hpp"

namespace mw {

Graph apply_flips(const Graph& g, const FlipSpec& f) {
  MW_CHECK(f.parts.n() == g.n(), "flip partition size mismatch");
  BitGraph b = BitGraph::from_graph(g);
  for (PairKey p : f.flipped) {
    Vertex a = pair_lo(p), bb = pair_hi(p);
    MW_CHECK(f.parts.rep(a) == a && f.parts.rep(bb) == bb, "unknown part in flip spec");
    b.flip_pair(f.parts.members(a), f.parts.members(bb));
  }
  return b.to_graph();
}

FlipSpec flip_from_resolution(const Graph& g, const Partition& parts,
                              const std::vector<PairKey>& resolved) {
  FlipSpec out;
  out.parts = parts;
  auto reps = parts.reps();
  std::vector<std::vector<Vertex>> members;
  members.reserve(reps.size());
  for (Vertex r : reps) members.push_back(parts.members(r));
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i; j < reps.size(); ++j) {
      int unresolved_edges = 0, unresolved_nonedges = 0;
      for (Vertex x : members[i])
        for (Vertex y : members[j]) {
          if (x >= y && i == j) continue;
          if (x == y) continue;
          if (std::binary_search(resolved.begin(), resolved.end(), pair_key(x, y))) continue;
          (g.has_edge(x, y) ? unresolved_edges : unresolved_nonedges)++;
        }
      if (unresolved_edges > 0 && unresolved_nonedges > 0)
        throw Error("parts " + std::to_string(reps[i]) + "," + std::to_string(reps[j]) +
                    " are inhomogeneous off the resolved set");
      if (unresolved_edges > 0) out.flipped.push_back(pair_key(reps[i], reps[j]));
    }
  return out;
}

RestrainedFlipSequence merge_to_restrained_flip(const Graph& g, const MergeSequence& ms) {
  auto report = validate_merge(ms, g);
  if (!report.ok) throw Error("invalid merge sequence: " + report.error);
  MergeSequence src = ms;
  if (!src.steps.empty() && !src.steps.front().resolved.empty())
    src.steps.insert(src.steps.begin(), {Partition(ms.n), {}});
  RestrainedFlipSequence rfs;
  rfs.n = src.n;
  for (size_t t = src.steps.size(); t-- > 0;) {
    const auto& step = src.steps[t];
    FlipSpec spec = flip_from_resolution(g, step.parts, step.resolved);
    rfs.steps.push_back(
        {step.parts, step.resolved, BitGraph::from_graph(apply_flips(g, spec))});
  }
  return rfs;
}

ValidationReport validate_rfs(const RestrainedFlipSequence& rfs, const Graph& g) {
  ValidationReport rep;
  auto fail = [&](int step, const std::string& msg) {
    rep.ok = false;
    rep.index = step;
    rep.error = msg + " at step " + std::to_string(step);
  };
  if (rfs.steps.empty() || rfs.n != g.n()) {
    fail(0, "empty sequence or size mismatch");
    return rep;
  }
  size_t m = rfs.steps.size();
  if (rfs.steps.front().parts.part_count() != 1 && rfs.n > 1) {
    fail(1, "first partition must have one part");
    return rep;
  }
  if (rfs.steps.back().parts.part_count() != rfs.n) {
    fail(static_cast<int>(m), "last partition must be singletons");
    return rep;
  }
  if (!rfs.steps.back().restraint.empty()) {
    fail(static_cast<int>(m), "final restraint must be empty");
    return rep;
  }
  size_t all_pairs = static_cast<size_t>(rfs.n) * (rfs.n - 1) / 2;
  if (rfs.steps.front().restraint.size() != all_pairs)
    rep.diagnostics.push_back("first restraint covers " +
                              std::to_string(rfs.steps.front().restraint.size()) + " of " +
                              std::to_string(all_pairs) + " pairs");
  for (size_t t = 0; t < m; ++t) {
    const auto& step = rfs.steps[t];
    if (t + 1 < m) {
      if (!rfs.steps[t + 1].parts.refines(step.parts)) {
        fail(static_cast<int>(t + 2), "partitions must refine over time");
        return rep;
      }
      if (!std::includes(step.restraint.begin(), step.restraint.end(),
                         rfs.steps[t + 1].restraint.begin(),
                         rfs.steps[t + 1].restraint.end())) {
        fail(static_cast<int>(t + 2), "restraints must shrink over time");
        return rep;
      }
    }
    // E(G_t) within the restraint
    for (Vertex u = 1; u <= rfs.n; ++u)
      for (Vertex v = u + 1; v <= rfs.n; ++v)
        if (step.flip.has_edge(u, v) &&
            !std::binary_search(step.restraint.begin(), step.restraint.end(),
                                pair_key(u, v))) {
          fail(static_cast<int>(t + 1), "flip graph leaves the restraint");
          return rep;
        }
    // G_t is a P_t-flip of g: each part pair preserved or complemented
    auto reps = step.parts.reps();
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i; j < reps.size(); ++j) {
        bool same = true, complemented = true;
        for (Vertex x : step.parts.members(reps[i])) {
          for (Vertex y : step.parts.members(reps[j])) {
            if (x == y || (i == j && x > y)) continue;
            bool in_g = g.has_edge(x, y), in_f = step.flip.has_edge(x, y);
            if (in_g != in_f) same = false;
            if (in_g == in_f) complemented = false;
          }
          if (!same && !complemented) break;
        }
        if (!same && !complemented) {
          fail(static_cast<int>(t + 1), "flip graph is not a P_t-flip between parts " +
                                            std::to_string(reps[i]) + "," +
                                            std::to_string(reps[j]));
          return rep;
        }
      }
  }
  return rep;
}

int width_of_rfs(const RestrainedFlipSequence& rfs, int r) {
  if (rfs.steps.size() <= 1) return rfs.n > 0 ? 1 : 0;
  int best = 0;
  for (size_t t = 0; t + 1 < rfs.steps.size(); ++t)
    best = std::max(best, pair_width(rfs.n, rfs.steps[t + 1].parts,
                                     rfs.steps[t].restraint, r));
  return best;
}

std::vector<int> rfs_step_widths(const RestrainedFlipSequence& rfs, int r) {
  std::vector<int> out;
  for (size_t t = 1; t < rfs.steps.size(); ++t)
    out.push_back(pair_width(rfs.n, rfs.steps[t].parts, rfs.steps[t - 1].restraint, r));
  return out;
}

namespace {

std::vector<std::vector<Vertex>> restraint_adjacency(int n,
                                                     const std::vector<PairKey>& pairs) {
  std::vector<std::vector<Vertex>> adj(n + 1);
  for (PairKey p : pairs) {
    adj[pair_lo(p)].push_back(pair_hi(p));
    adj[pair_hi(p)].push_back(pair_lo(p));
  }
  return adj;
}

BitGraph mix_rows(const Graph& g, const BitGraph& gt, const std::vector<Vertex>& take_gt) {
  BitGraph out = BitGraph::from_graph(g);
  for (Vertex x : take_gt)
    for (Vertex y = 1; y <= g.n(); ++y)
      if (y != x) out.set_edge(x, y, gt.has_edge(x, y));
  return out;
}

Partition partition_by_signature(int n, const std::vector<std::vector<int>>& sig) {
  std::map<std::vector<int>, Vertex> first;
  Partition parts(n);
  for (Vertex v = 1; v <= n; ++v) {
    auto [it, inserted] = first.emplace(sig[v], v);
    if (!inserted) parts.merge(it->second, v);
  }
  return parts;
}

// Merges classes with identical flip behavior (twin contraction on the
// flip-pattern matrix); the result still certifies gp as a Q-flip of g.
Partition coarsen_flip_partition(const Graph& g, const BitGraph& gp, Partition q) {
  auto flip_of = [&](const std::vector<Vertex>& a, const std::vector<Vertex>& b) -> int {
    for (Vertex x : a)
      for (Vertex y : b) {
        if (x == y) continue;
        return gp.has_edge(x, y) != g.has_edge(x, y) ? 1 : 0;
      }
    return -1;  // no pairs (singleton diagonal): vacuous
  };
  bool changed = true;
  while (changed) {
    changed = false;
    auto reps = q.reps();
    size_t c = reps.size();
    std::vector<std::vector<Vertex>> members(c);
    for (size_t i = 0; i < c; ++i) members[i] = q.members(reps[i]);
    std::vector<std::vector<int>> flip(c, std::vector<int>(c));
    for (size_t i = 0; i < c; ++i)
      for (size_t j = i; j < c; ++j)
        flip[i][j] = flip[j][i] =
            (i == j) ? flip_of(members[i], members[i]) : flip_of(members[i], members[j]);
    auto compat = [](int a, int b) { return a < 0 || b < 0 || a == b; };
    for (size_t i = 0; i < c && !changed; ++i)
      for (size_t j = i + 1; j < c && !changed; ++j) {
        bool ok = compat(flip[i][i], flip[j][j]) && compat(flip[i][i], flip[i][j]) &&
                  compat(flip[j][j], flip[i][j]);
        for (size_t k = 0; k < c && ok; ++k)
          if (k != i && k != j) ok = flip[i][k] == flip[j][k];
        if (ok) {
          q.merge(reps[i], reps[j]);
          changed = true;
        }
      }
  }
  return q;
}

}  // namespace

FlipperMove flipper_step(const Graph& g, const RestrainedFlipSequence& rfs, int t, Vertex v,
                         int r, const std::vector<int>* widths) {
  MW_CHECK(t >= 2 && t <= static_cast<int>(rfs.steps.size()), "t out of range");
  const auto& parts = rfs.steps[t - 1].parts;
  const auto& restraint = rfs.steps[t - 2].restraint;
  const BitGraph& gt = rfs.steps[t - 1].flip;
  int n = g.n();
  FlipperMove move;
  move.width_s =
      widths ? (*widths)[t - 2] : pair_width(n, parts, restraint, 2 * r - 1);
  long long bound = 1;
  for (int i = 0; i < move.width_s && bound <= n; ++i) bound *= 4;  // 4^s
  move.certified_bound = static_cast<int>(std::min<long long>(bound, n + 1));
  // Q_{2r-1}: parts of P_t reached within 2r-1 of v in (V, R_{t-1}).
  auto adj = restraint_adjacency(n, restraint);
  auto dist = bfs_distances(adj, {v}, 2 * r - 1);
  std::set<Vertex> q_reps;
  for (Vertex w = 1; w <= n; ++w)
    if (dist[w] <= 2 * r - 1) q_reps.insert(parts.rep(w));
  std::vector<Vertex> q_vertices;
  for (Vertex w = 1; w <= n; ++w)
    if (q_reps.count(parts.rep(w))) q_vertices.push_back(w);
  move.graph = mix_rows(g, gt, q_vertices);
  // Signature over F: the parts of Q_{2r-1} with a nonempty flip target,
  // and those targets U(A).
  std::vector<std::vector<int>> signature(n + 1);
  auto reps = parts.reps();
  for (Vertex a : q_reps) {
    auto am = parts.members(a);
    std::vector<uint8_t> in_ua(n + 1, 0);
    bool any = false;
    for (Vertex b : reps) {
      bool differs = false;
      for (Vertex x : am) {
        for (Vertex y : parts.members(b)) {
          if (x == y) continue;
          if (move.graph.has_edge(x, y) != g.has_edge(x, y)) {
            differs = true;
            break;
          }
        }
        if (differs) break;
      }
      if (differs) {
        any = true;
        for (Vertex y : parts.members(b)) in_ua[y] = 1;
      }
    }
    if (!any) continue;  // A participates in no flip: no refinement needed
    for (Vertex w = 1; w <= n; ++w) {
      signature[w].push_back(parts.rep(w) == a ? 1 : 0);
      signature[w].push_back(in_ua[w]);
    }
  }
  move.flip_partition =
      coarsen_flip_partition(g, move.graph, partition_by_signature(n, signature));
  move.flip_parts = move.flip_partition.part_count();
  return move;
}

FlipperMove flipper_step_poly(const Graph& g, const RestrainedFlipSequence& rfs, int t,
                              Vertex v, int r, const std::vector<int>* widths) {
  MW_CHECK(t >= 2 && t <= static_cast<int>(rfs.steps.size()), "t out of range");
  const auto& parts = rfs.steps[t - 1].parts;
  const auto& restraint = rfs.steps[t - 2].restraint;
  const BitGraph& gt = rfs.steps[t - 1].flip;
  int n = g.n();
  FlipperMove move;
  move.width_s = widths ? (*widths)[t - 2] : pair_width(n, parts, restraint, 2 * r);
  auto adj = restraint_adjacency(n, restraint);
  auto dist = bfs_distances(adj, {v}, 2 * r);
  // Pieces A cap B_2r of P_t, tagged with the smallest enclosing ball.
  std::map<Vertex, std::pair<int, std::vector<Vertex>>> pieces;
  for (Vertex w = 1; w <= n; ++w) {
    if (dist[w] > 2 * r) continue;
    auto& entry = pieces[parts.rep(w)];
    entry.first = std::max(entry.first, dist[w]);
    entry.second.push_back(w);
  }
  std::vector<Vertex> inner_vertices;  // pieces contained in B_{2r-1}
  std::vector<Vertex> s_reps;
  for (auto& [rep, entry] : pieces)
    if (entry.first <= 2 * r - 1) {
      s_reps.push_back(entry.second.front());
      for (Vertex w : entry.second) inner_vertices.push_back(w);
    }
  move.graph = mix_rows(g, gt, inner_vertices);
  // Announced partition: pieces on B_2r, trace classes outside.
  std::vector<Vertex> boundary;  // B_{2r-1}
  for (Vertex w = 1; w <= n; ++w)
    if (dist[w] <= 2 * r - 1) boundary.push_back(w);
  std::vector<std::vector<int>> signature(n + 1);
  for (Vertex w = 1; w <= n; ++w) {
    auto& sig = signature[w];
    if (dist[w] <= 2 * r) {
      sig.push_back(1);
      sig.push_back(parts.rep(w));
    } else {
      sig.push_back(0);
      for (Vertex b : boundary) sig.push_back(g.has_edge(w, b) ? 1 : 0);
    }
  }
  move.flip_partition =
      coarsen_flip_partition(g, move.graph, partition_by_signature(n, signature));
  move.flip_parts = move.flip_partition.part_count();
  // Counted trace bound: traces on the inner-piece representatives.
  std::set<std::vector<uint8_t>> traces;
  for (Vertex w = 1; w <= n; ++w) {
    if (dist[w] <= 2 * r) continue;
    std::vector<uint8_t> trace;
    for (Vertex s : s_reps) trace.push_back(g.has_edge(w, s) ? 1 : 0);
    traces.insert(std::move(trace));
  }
  move.certified_bound = static_cast<int>(pieces.size() + traces.size());
  return move;
}

namespace {

Vertex runner_move(const BitGraph& prev, Vertex at, RunnerKind kind, std::mt19937_64& rng,
                   int r) {
  auto ball = prev.ball(at, r);
  auto options = prev.mask_vertices(ball);
  MW_CHECK(!options.empty(), "runner has no legal move");
  if (kind == RunnerKind::Random) {
    std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
    return options[pick(rng)];
  }
  // greedy-far: maximize distance from the current focus in the previously
  // announced graph; smallest id wins ties
  Vertex best = options.front();
  int best_d = -1;
  for (Vertex w : options) {
    int d = prev.dist(at, w);
    if (d > best_d) {
      best_d = d;
      best = w;
    }
  }
  return best;
}

}  // namespace

GameTranscript play_game(const Graph& g, const RestrainedFlipSequence& rfs, int r,
                         const GameOptions& opt) {
  MW_CHECK(r >= 1, "game radius must be >= 1");
  int n = g.n();
  MW_CHECK(n >= 1, "game needs vertices");
  GameTranscript out;
  std::mt19937_64 rng(opt.seed);
  std::vector<int> widths = rfs_step_widths(rfs, opt.poly_strategy ? 2 * r : 2 * r - 1);
  std::uniform_int_distribution<Vertex> pick(1, n);
  out.start = pick(rng);
  Vertex cur = out.start;
  BitGraph prev = BitGraph::from_graph(g);  // "previous graph" before round 1
  size_t m = rfs.steps.size();
  for (size_t t = 1; t <= m; ++t) {
    FlipperMove move;
    if (t == 1) {
      move.graph = rfs.steps[0].flip;
      move.flip_parts = rfs.steps[0].parts.part_count();
      move.flip_partition = rfs.steps[0].parts;
    } else {
      move = opt.poly_strategy
                 ? flipper_step_poly(g, rfs, static_cast<int>(t), cur, r, &widths)
                 : flipper_step(g, rfs, static_cast<int>(t), cur, r, &widths);
    }
    Vertex moved = runner_move(prev, cur, opt.runner, rng, r);
    if (opt.check_invariant) {
      auto lhs = move.graph.ball(moved, r);
      auto rhs = rfs.steps[t - 1].flip.ball(moved, r);
      MW_CHECK(move.graph.ball_subset(lhs, rhs),
               "ball containment invariant violated in round " + std::to_string(t));
    }
    cur = moved;
    out.rounds.push_back({move.flip_parts, cur, move.width_s});
    out.max_flip_parts = std::max(out.max_flip_parts, move.flip_parts);
    if (move.graph.isolated(cur)) {
      out.flipper_won = true;
      return out;
    }
    prev = move.graph;
  }
  out.flipper_won = false;
  return out;
}

ExhaustiveResult exhaustive_game(const Graph& g, const RestrainedFlipSequence& rfs, int r,
                                 bool poly_strategy) {
  int n = g.n();
  MW_CHECK(n <= 12, "exhaustive game search is guarded to n <= 12");
  ExhaustiveResult out;
  out.flipper_always_wins = true;
  std::vector<int> widths = rfs_step_widths(rfs, poly_strategy ? 2 * r : 2 * r - 1);
  size_t m = rfs.steps.size();
  std::map<std::pair<size_t, Vertex>, BitGraph> announce_memo;
  announce_memo.emplace(std::make_pair(size_t{0}, Vertex{0}), BitGraph::from_graph(g));
  auto announce = [&](size_t t, Vertex vprev) -> const BitGraph& {
    auto key = std::make_pair(t, t <= 1 ? Vertex{0} : vprev);
    auto it = announce_memo.find(key);
    if (it == announce_memo.end()) {
      FlipperMove move = poly_strategy
                             ? flipper_step_poly(g, rfs, static_cast<int>(t), vprev, r, &widths)
                             : flipper_step(g, rfs, static_cast<int>(t), vprev, r, &widths);
      out.max_flip_parts = std::max(out.max_flip_parts, move.flip_parts);
      it = announce_memo.emplace(key, std::move(move.graph)).first;
    }
    return it->second;
  };
  announce_memo.emplace(std::make_pair(size_t{1}, Vertex{0}), rfs.steps[0].flip);
  out.max_flip_parts = std::max(out.max_flip_parts, rfs.steps[0].parts.part_count());
  // State: t rounds played, the round-t graph was announced for vprev, the
  // runner sits at vlast and is not isolated there.
  std::map<std::tuple<size_t, Vertex, Vertex>, bool> memo;
  std::function<bool(size_t, Vertex, Vertex)> flipper_catches =
      [&](size_t t, Vertex vprev, Vertex vlast) -> bool {
    if (t == m) return false;  // sequence exhausted, runner survived
    auto key = std::make_tuple(t, vprev, vlast);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const BitGraph& cur = announce(t, vprev);
    const BitGraph& next = announce(t + 1, vlast);
    bool ok = true;
    auto ball = cur.ball(vlast, r);
    for (Vertex w : cur.mask_vertices(ball)) {
      if (next.isolated(w)) continue;  // caught here
      out.deepest_round = std::max<int>(out.deepest_round, static_cast<int>(t + 1));
      if (!flipper_catches(t + 1, vlast, w)) {
        ok = false;
        break;
      }
    }
    memo.emplace(key, ok);
    return ok;
  };
  for (Vertex v0 = 1; v0 <= n && out.flipper_always_wins; ++v0)
    out.flipper_always_wins = flipper_catches(0, 0, v0);
  return out;
}

}  // namespace mw
