#include "mw/seq.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mw/bfs.hpp"

namespace mw {

GraphReplay::GraphReplay(const Graph& g)
    : g_(&g),
      parts_(g.n()),
      members_(g.n() + 1),
      radj_(g.n() + 1),
      part_count_(g.n()) {
  size_t bits = static_cast<size_t>(g.n()) * (g.n() - 1) / 2;
  resolved_bits_.assign((bits + 63) / 64, 0);
  for (Vertex v = 1; v <= g.n(); ++v) members_[v] = {v};
}

size_t GraphReplay::tri_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  return static_cast<size_t>(v - 1) * (v - 2) / 2 + (u - 1);
}

bool GraphReplay::resolved(Vertex u, Vertex v) const {
  size_t i = tri_index(u, v);
  return (resolved_bits_[i / 64] >> (i % 64)) & 1;
}

size_t GraphReplay::total_pairs() const {
  return static_cast<size_t>(n()) * (n() - 1) / 2;
}

std::optional<std::string> GraphReplay::apply(const ConstructionOp& op) {
  int nn = n();
  if (op.u < 1 || op.u > nn || op.v < 1 || op.v > nn)
    return "op references vertex out of range";
  last_added_.clear();
  last_merge_small_.clear();
  if (op.kind == OpKind::Merge) {
    Vertex a = parts_.rep(op.u), b = parts_.rep(op.v);
    if (a == b) return "merge of same part";
    Vertex small = members_[a].size() <= members_[b].size() ? a : b;
    last_merge_small_ = members_[small];
    Vertex keep = std::min(a, b), drop = std::max(a, b);
    auto& dst = members_[keep];
    auto& src = members_[drop];
    dst.insert(dst.end(), src.begin(), src.end());
    src.clear();
    src.shrink_to_fit();
    parts_.merge(keep, drop);
    --part_count_;
    return std::nullopt;
  }
  if (op.kind == OpKind::ResolveRel) return "res REL is only valid in structure mode";
  bool positive = op.kind == OpKind::ResolvePos;
  Vertex a = parts_.rep(op.u), b = parts_.rep(op.v);
  const auto& as = members_[a];
  const auto& bs = members_[b];
  // Polarity check before any mutation.
  for (Vertex x : as)
    for (Vertex y : bs) {
      if (x >= y && a == b) continue;
      if (x == y) continue;
      if (resolved(x, y)) continue;
      if (g_->has_edge(x, y) != positive) return "polarity conflict";
    }
  for (Vertex x : as)
    for (Vertex y : bs) {
      if (x >= y && a == b) continue;
      if (x == y) continue;
      if (resolved(x, y)) continue;
      size_t i = tri_index(x, y);
      resolved_bits_[i / 64] |= 1ULL << (i % 64);
      ++resolved_count_;
      if (g_->has_edge(x, y)) ++resolved_edge_count_;
      radj_[x].push_back(y);
      radj_[y].push_back(x);
      if (record_added) last_added_.push_back(pair_key(x, y));
    }
  return std::nullopt;
}

namespace {

std::string op_to_string(const ConstructionOp& op) {
  switch (op.kind) {
    case OpKind::Merge:
      return "merge " + std::to_string(op.u) + " " + std::to_string(op.v);
    case OpKind::ResolvePos:
      return "res+ " + std::to_string(op.u) + " " + std::to_string(op.v);
    case OpKind::ResolveNeg:
      return "res- " + std::to_string(op.u) + " " + std::to_string(op.v);
    case OpKind::ResolveRel:
      return "res " + pred_name(op.rel) + " " + std::to_string(op.u) + " " +
             std::to_string(op.v);
  }
  return "?";
}

// Part-pair homogeneity off the resolved set (diagnostic only).
std::optional<std::string> homogeneity_violation(const Graph& g, const GraphReplay& rp) {
  std::map<PairKey, bool> polarity;
  for (Vertex u = 1; u <= g.n(); ++u)
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      if (rp.resolved(u, v)) continue;
      PairKey pp = pair_key(rp.partition().rep(u), rp.partition().rep(v));
      bool e = g.has_edge(u, v);
      auto [it, inserted] = polarity.emplace(pp, e);
      if (!inserted && it->second != e)
        return "parts " + std::to_string(pair_lo(pp)) + "," + std::to_string(pair_hi(pp)) +
               " inhomogeneous off R";
    }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_construction(const ConstructionSequence& cs,
                                       const ValidateOptions& opt) {
  ValidationReport rep;
  if (cs.mode == SeqMode::Structure) {
    try {
      auto states = replay_structure(cs);
      const auto& last = states.back();
      if (last.parts.part_count() != 1 && cs.n() > 0) {
        rep.ok = false;
        rep.error = "incomplete: final partition has " +
                    std::to_string(last.parts.part_count()) + " parts";
        return rep;
      }
      for (PredId r : cs.structure.binary_names()) {
        if (last.base.successors(r) != cs.structure.successors(r)) {
          rep.ok = false;
          rep.error = "incomplete: relation " + pred_name(r) + " differs from subject";
          return rep;
        }
      }
    } catch (const Error& e) {
      rep.ok = false;
      rep.error = e.what();
    }
    return rep;
  }

  const Graph& g = cs.graph;
  GraphReplay rp(g);
  rp.record_added = false;
  bool diag = opt.homogeneity_diagnostics && g.n() <= opt.diagnostics_max_n;
  if (diag) {
    if (auto viol = homogeneity_violation(g, rp))
      rep.diagnostics.push_back("snapshot 0: " + *viol);
  }
  for (size_t i = 0; i < cs.ops.size(); ++i) {
    if (auto err = rp.apply(cs.ops[i])) {
      rep.ok = false;
      rep.index = static_cast<int>(i + 1);
      rep.error = *err + " at op " + std::to_string(i + 1) + " (" +
                  op_to_string(cs.ops[i]) + ")";
      return rep;
    }
    if (diag) {
      if (auto viol = homogeneity_violation(g, rp))
        rep.diagnostics.push_back("snapshot " + std::to_string(i + 1) + ": " + *viol);
    }
  }
  if (g.n() > 0 && rp.part_count() != 1) {
    rep.ok = false;
    rep.error = "incomplete: final partition has " + std::to_string(rp.part_count()) +
                " parts";
    return rep;
  }
  if (rp.resolved_count() != rp.total_pairs()) {
    rep.ok = false;
    rep.error = "incomplete: " +
                std::to_string(rp.total_pairs() - rp.resolved_count()) +
                " pairs left unresolved";
    return rep;
  }
  return rep;
}

namespace {

// Distinct parts reachable from v by a path of length <= cap in radj.
int reach_count(const GraphReplay& rp, Vertex v, int cap) {
  const auto& radj = rp.r_adjacency();
  if (rp.part_count() == 1) return 1;
  std::vector<Vertex> stackv = {v};
  std::vector<int> dist(rp.n() + 1, -1);
  dist[v] = 0;
  std::vector<Vertex> reps;
  size_t head = 0;
  while (head < stackv.size()) {
    Vertex u = stackv[head++];
    reps.push_back(rp.partition().rep(u));
    if (dist[u] >= cap) continue;
    for (Vertex w : radj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        stackv.push_back(w);
      }
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return static_cast<int>(reps.size());
}

std::vector<Vertex> ball_of(const GraphReplay& rp, const std::vector<Vertex>& seeds, int cap) {
  const auto& radj = rp.r_adjacency();
  std::vector<Vertex> queue = seeds;
  std::vector<int> dist(rp.n() + 1, -1);
  for (Vertex s : seeds) dist[s] = 0;
  size_t head = 0;
  while (head < queue.size()) {
    Vertex u = queue[head++];
    if (dist[u] >= cap) continue;
    for (Vertex w : radj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return queue;
}

}  // namespace

int width_of_construction(const ConstructionSequence& cs, int r) {
  if (cs.mode == SeqMode::Structure) {
    auto states = replay_structure(cs);
    int best = 0;
    for (const auto& s : states) best = std::max(best, radius_width(s, r));
    return best;
  }
  const Graph& g = cs.graph;
  int nn = g.n();
  if (nn == 0) return 0;
  int cap = (r == kRadiusInf) ? nn : std::min(r, nn);
  GraphReplay rp(g);
  int best = 1;  // the singleton start counts
  // Counts change only at recomputed vertices, so folding those values into
  // the running max covers every snapshot's maximum.
  auto recompute = [&](const std::vector<Vertex>& vs) {
    for (Vertex v : vs) best = std::max(best, reach_count(rp, v, cap));
  };
  for (const auto& op : cs.ops) {
    bool single_before = rp.part_count() == 1;
    rp.record_added = !single_before;  // widths are 1 from then on
    if (auto err = rp.apply(op)) throw Error(*err);
    if (rp.part_count() == 1) continue;
    if (op.kind == OpKind::Merge) {
      // Only vertices r-reaching the (previously) smaller part can change,
      // and merges only decrease counts; nothing new to fold in.
      (void)0;
    } else {
      std::vector<Vertex> seeds;
      for (PairKey p : rp.last_added()) {
        seeds.push_back(pair_lo(p));
        seeds.push_back(pair_hi(p));
      }
      std::sort(seeds.begin(), seeds.end());
      seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
      recompute(ball_of(rp, seeds, cap));
    }
  }
  return best;
}

MergeSequence construction_to_merge(const ConstructionSequence& cs) {
  MW_CHECK(cs.mode == SeqMode::Graph, "construction_to_merge expects graph mode");
  auto report = validate_construction(cs, {.homogeneity_diagnostics = false});
  if (!report.ok) throw Error("invalid construction sequence: " + report.error);
  MergeSequence ms;
  ms.n = cs.graph.n();
  GraphReplay rp(cs.graph);
  std::vector<PairKey> cum;
  ms.steps.push_back({rp.partition(), cum});
  for (const auto& op : cs.ops) {
    if (auto err = rp.apply(op)) throw Error(*err);
    for (PairKey p : rp.last_added()) cum.push_back(p);
    std::sort(cum.begin(), cum.end());
    ms.steps.push_back({rp.partition(), cum});
  }
  return ms;
}

ValidationReport validate_merge(const MergeSequence& ms, const Graph& g) {
  ValidationReport rep;
  auto fail = [&](int step, const std::string& msg) {
    rep.ok = false;
    rep.index = step;
    rep.error = msg + " at step " + std::to_string(step);
  };
  if (ms.n != g.n()) {
    fail(0, "vertex count mismatch");
    return rep;
  }
  if (ms.steps.empty()) {
    fail(0, "empty merge sequence");
    return rep;
  }
  if (ms.steps.front().parts.part_count() != ms.n) {
    fail(1, "first partition is not the singleton partition");
    return rep;
  }
  if (ms.n > 0 && ms.steps.back().parts.part_count() != 1) {
    fail(static_cast<int>(ms.steps.size()), "last partition has more than one part");
    return rep;
  }
  for (size_t t = 1; t < ms.steps.size(); ++t) {
    if (!ms.steps[t - 1].parts.refines(ms.steps[t].parts)) {
      fail(static_cast<int>(t + 1), "not coarser than previous partition");
      return rep;
    }
    if (!std::includes(ms.steps[t].resolved.begin(), ms.steps[t].resolved.end(),
                       ms.steps[t - 1].resolved.begin(), ms.steps[t - 1].resolved.end())) {
      fail(static_cast<int>(t + 1), "resolved set not monotone");
      return rep;
    }
  }
  for (size_t t = 0; t < ms.steps.size(); ++t) {
    const auto& step = ms.steps[t];
    std::map<PairKey, bool> polarity;
    for (Vertex u = 1; u <= ms.n; ++u)
      for (Vertex v = u + 1; v <= ms.n; ++v) {
        PairKey p = pair_key(u, v);
        if (std::binary_search(step.resolved.begin(), step.resolved.end(), p)) continue;
        PairKey pp = pair_key(step.parts.rep(u), step.parts.rep(v));
        bool e = g.has_edge(u, v);
        auto [it, inserted] = polarity.emplace(pp, e);
        if (!inserted && it->second != e) {
          fail(static_cast<int>(t + 1),
               "homogeneity violated between parts " + std::to_string(pair_lo(pp)) + " and " +
                   std::to_string(pair_hi(pp)));
          return rep;
        }
      }
  }
  return rep;
}

int pair_width(int n, const Partition& parts, const std::vector<PairKey>& pairs, int r) {
  if (n == 0) return 0;
  int cap = (r == kRadiusInf) ? n : std::min(r, n);
  std::vector<std::vector<Vertex>> adj(n + 1);
  for (PairKey p : pairs) {
    adj[pair_lo(p)].push_back(pair_hi(p));
    adj[pair_hi(p)].push_back(pair_lo(p));
  }
  int best = 0;
  std::vector<int> dist(n + 1);
  for (Vertex v = 1; v <= n; ++v) {
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<Vertex> queue = {v};
    dist[v] = 0;
    std::vector<Vertex> reps;
    size_t head = 0;
    while (head < queue.size()) {
      Vertex u = queue[head++];
      reps.push_back(parts.rep(u));
      if (dist[u] >= cap) continue;
      for (Vertex w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    best = std::max(best, static_cast<int>(reps.size()));
  }
  return best;
}

int width_of_merge(const MergeSequence& ms, int r) {
  if (ms.steps.size() <= 1) return ms.n > 0 ? 1 : 0;
  int best = 0;
  for (size_t t = 1; t < ms.steps.size(); ++t)
    best = std::max(best,
                    pair_width(ms.n, ms.steps[t - 1].parts, ms.steps[t].resolved, r));
  return best;
}

ConstructionSequence merge_to_construction(const MergeSequence& ms, const Graph& g) {
  auto report = validate_merge(ms, g);
  if (!report.ok) throw Error("invalid merge sequence: " + report.error);
  ConstructionSequence cs;
  cs.mode = SeqMode::Graph;
  cs.graph = g;
  if (ms.steps.size() <= 1) return cs;
  GraphReplay rp(g);
  rp.record_added = false;
  auto emit = [&](const ConstructionOp& op) {
    if (auto err = rp.apply(op)) throw Error("ms invalid: " + *err);
    cs.ops.push_back(op);
  };
  for (size_t t = 0; t + 1 < ms.steps.size(); ++t) {
    const auto& next = ms.steps[t + 1];
    // Resolve every part pair of P_t fully covered by R_{t+1}, in
    // lexicographic representative order.
    auto reps = rp.partition().reps();
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i; j < reps.size(); ++j) {
        const auto& as = rp.members(reps[i]);
        const auto& bs = rp.members(reps[j]);
        bool covered = true;
        bool any_unresolved = false;
        int pol = -1;  // 0 = non-edges, 1 = edges, -1 = none seen
        for (Vertex x : as) {
          for (Vertex y : bs) {
            if (x == y || (i == j && x > y)) continue;
            if (!std::binary_search(next.resolved.begin(), next.resolved.end(),
                                    pair_key(x, y))) {
              covered = false;
              break;
            }
            if (!rp.resolved(x, y)) {
              any_unresolved = true;
              int e = g.has_edge(x, y) ? 1 : 0;
              if (pol == -1) pol = e;
              if (pol != e) throw Error("ms invalid: mixed polarity in covered part pair");
            }
          }
          if (!covered) break;
        }
        if (covered && any_unresolved)
          emit({pol == 1 ? OpKind::ResolvePos : OpKind::ResolveNeg, reps[i], reps[j], 0});
      }
    // Merge greedily toward P_{t+1}, in lexicographic order.
    for (const auto& target : next.parts.parts()) {
      std::vector<Vertex> subreps;
      for (Vertex v : target)
        if (rp.partition().rep(v) == v) subreps.push_back(v);
      for (size_t i = 1; i < subreps.size(); ++i)
        emit({OpKind::Merge, subreps[0], subreps[i], 0});
    }
  }
  // Final resolution of the single part, if anything is left.
  if (rp.resolved_count() < rp.total_pairs()) {
    size_t unresolved_edges = g.m() - rp.resolved_edge_count();
    size_t unresolved_total = rp.total_pairs() - rp.resolved_count();
    Vertex rep0 = rp.partition().rep(1);
    if (unresolved_edges > 0)
      emit({OpKind::ResolvePos, rep0, rep0, 0});
    if (unresolved_edges < unresolved_total) {
      if (unresolved_edges > 0)
        throw Error("ms invalid: mixed polarity left for the final part");
      emit({OpKind::ResolveNeg, rep0, rep0, 0});
    }
  }
  return cs;
}

ConstructionSequence normalize_effective(const ConstructionSequence& cs) {
  MW_CHECK(cs.mode == SeqMode::Graph, "normalize_effective expects graph mode");
  // Pass 1: drop ineffective resolves.
  std::vector<ConstructionOp> effective;
  {
    GraphReplay rp(cs.graph);
    rp.record_added = false;
    for (const auto& op : cs.ops) {
      size_t before = rp.resolved_count();
      if (auto err = rp.apply(op)) throw Error(*err);
      if (op.kind == OpKind::Merge || rp.resolved_count() > before)
        effective.push_back(op);
    }
  }
  // Pass 2: postpone resolves that do not touch the next merged pair.
  ConstructionSequence out;
  out.mode = SeqMode::Graph;
  out.graph = cs.graph;
  Partition parts(cs.graph.n());
  std::vector<ConstructionOp> pending;
  for (const auto& op : effective) {
    if (op.kind != OpKind::Merge) {
      pending.push_back(op);
      continue;
    }
    Vertex a = parts.rep(op.u), b = parts.rep(op.v);
    std::vector<ConstructionOp> keep;
    for (const auto& res : pending) {
      Vertex x = parts.rep(res.u), y = parts.rep(res.v);
      if (x == a || x == b || y == a || y == b)
        out.ops.push_back(res);
      else
        keep.push_back(res);
    }
    pending = std::move(keep);
    out.ops.push_back(op);
    parts.merge(a, b);
  }
  for (const auto& res : pending) out.ops.push_back(res);
  return out;
}

MergeSequence compact_merge(const MergeSequence& ms) {
  // Keeps the first step of each equal-partition run.  Every width term of
  // the result pairs a kept partition with a kept R, both of which occur as
  // terms of the input, and every dropped term is dominated by a kept one.
  MergeSequence out;
  out.n = ms.n;
  for (size_t t = 0; t < ms.steps.size(); ++t) {
    if (out.steps.empty() || !(out.steps.back().parts == ms.steps[t].parts))
      out.steps.push_back(ms.steps[t]);
  }
  return out;
}

std::vector<PartitionedStructure> replay_structure(const ConstructionSequence& cs) {
  MW_CHECK(cs.mode == SeqMode::Structure, "replay_structure expects structure mode");
  std::vector<PartitionedStructure> states;
  states.push_back(initial_structure(cs.structure));
  for (size_t i = 0; i < cs.ops.size(); ++i) {
    const auto& op = cs.ops[i];
    const auto& cur = states.back();
    try {
      switch (op.kind) {
        case OpKind::Merge:
          states.push_back(apply_merge(cur, op.u, op.v));
          break;
        case OpKind::ResolveRel:
          states.push_back(apply_resolve(cur, op.rel, op.u, op.v));
          break;
        default:
          throw Error("graph-mode resolve in structure mode");
      }
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " at op " + std::to_string(i + 1));
    }
  }
  return states;
}

BinaryStructure graph_subject_structure(const Graph& g) {
  BinaryStructure s(g.n());
  PredId e = intern_name("E"), nrel = intern_name("N");
  s.add_binary(e);
  s.add_binary(nrel);
  for (Vertex u = 1; u <= g.n(); ++u)
    for (Vertex v = 1; v <= g.n(); ++v) {
      if (u == v) continue;
      s.add_pair(g.has_edge(u, v) ? e : nrel, u, v);
    }
  return s;
}

ConstructionSequence lift_to_structure(const ConstructionSequence& cs) {
  MW_CHECK(cs.mode == SeqMode::Graph, "lift_to_structure expects graph mode");
  ConstructionSequence out;
  out.mode = SeqMode::Structure;
  out.structure = graph_subject_structure(cs.graph);
  PredId e = intern_name("E"), nrel = intern_name("N");
  for (const auto& op : cs.ops) {
    switch (op.kind) {
      case OpKind::Merge:
        out.ops.push_back(op);
        break;
      case OpKind::ResolvePos:
        out.ops.push_back({OpKind::ResolveRel, op.u, op.v, e});
        out.ops.push_back({OpKind::ResolveRel, op.v, op.u, e});
        break;
      case OpKind::ResolveNeg:
        out.ops.push_back({OpKind::ResolveRel, op.u, op.v, nrel});
        out.ops.push_back({OpKind::ResolveRel, op.v, op.u, nrel});
        break;
      case OpKind::ResolveRel:
        throw Error("res REL in graph-mode input");
    }
  }
  return out;
}

ConstructionSequence read_construction(std::istream& in, const Graph& g) {
  ConstructionSequence cs;
  cs.graph = g;
  std::string line;
  if (!std::getline(in, line)) throw Error("construction file: empty");
  {
    std::istringstream head(line);
    std::string tag, mode;
    if (!(head >> tag >> mode) || tag != "construction" || mode != "graph")
      throw Error("construction file: expected 'construction graph' header");
  }
  cs.mode = SeqMode::Graph;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    ConstructionOp op;
    if (word == "merge")
      op.kind = OpKind::Merge;
    else if (word == "res+")
      op.kind = OpKind::ResolvePos;
    else if (word == "res-")
      op.kind = OpKind::ResolveNeg;
    else if (word == "res") {
      op.kind = OpKind::ResolveRel;
      std::string rel;
      if (!(ls >> rel))
        throw Error("construction file: missing relation at line " + std::to_string(lineno));
      op.rel = intern_name(rel);
    } else
      throw Error("construction file: unknown op '" + word + "' at line " +
                  std::to_string(lineno));
    if (!(ls >> op.u >> op.v))
      throw Error("construction file: missing arguments at line " + std::to_string(lineno));
    cs.ops.push_back(op);
  }
  return cs;
}

ConstructionSequence read_construction(std::istream& in, const BinaryStructure& s) {
  ConstructionSequence cs;
  cs.structure = s;
  std::string line;
  if (!std::getline(in, line)) throw Error("construction file: empty");
  {
    std::istringstream head(line);
    std::string tag, mode;
    if (!(head >> tag >> mode) || tag != "construction" || mode != "structure")
      throw Error("construction file: expected 'construction structure' header");
  }
  cs.mode = SeqMode::Structure;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    ConstructionOp op;
    if (word == "merge")
      op.kind = OpKind::Merge;
    else if (word == "res") {
      op.kind = OpKind::ResolveRel;
      std::string rel;
      if (!(ls >> rel))
        throw Error("construction file: missing relation at line " + std::to_string(lineno));
      op.rel = intern_name(rel);
    } else
      throw Error("construction file: unknown op '" + word + "' at line " +
                  std::to_string(lineno));
    if (!(ls >> op.u >> op.v))
      throw Error("construction file: missing arguments at line " + std::to_string(lineno));
    cs.ops.push_back(op);
  }
  return cs;
}

void write_construction(std::ostream& out, const ConstructionSequence& cs) {
  out << "construction " << (cs.mode == SeqMode::Graph ? "graph" : "structure") << '\n';
  for (const auto& op : cs.ops) out << op_to_string(op) << '\n';
}

MergeSequence read_merge(std::istream& in, int n) {
  MergeSequence ms;
  ms.n = n;
  std::string line;
  MergeStep step{Partition(n), {}};
  bool have_step = false;
  int lineno = 0;
  auto flush = [&]() {
    if (have_step) {
      std::sort(step.resolved.begin(), step.resolved.end());
      step.resolved.erase(std::unique(step.resolved.begin(), step.resolved.end()),
                          step.resolved.end());
      ms.steps.push_back(step);
    }
    step = MergeStep{Partition(n), {}};
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "step") {
      flush();
      have_step = true;
    } else if (word == "parts:") {
      std::string rest;
      std::getline(ls, rest);
      std::vector<Vertex> group;
      std::string tok;
      std::istringstream rs(rest);
      bool in_group = false;
      while (rs >> tok) {
        while (!tok.empty() && tok.front() == '{') {
          in_group = true;
          group.clear();
          tok.erase(tok.begin());
        }
        bool close = false;
        while (!tok.empty() && tok.back() == '}') {
          close = true;
          tok.pop_back();
        }
        if (!tok.empty()) group.push_back(std::stoi(tok));
        if (close) {
          for (size_t i = 1; i < group.size(); ++i) step.parts.merge(group[0], group[i]);
          in_group = false;
        }
      }
      if (in_group) throw Error("merge file: unterminated part at line " + std::to_string(lineno));
    } else if (word == "resolved:") {
      std::string rest;
      std::getline(ls, rest);
      std::istringstream rs(rest);
      std::string pairtok;
      while (std::getline(rs, pairtok, ';')) {
        std::istringstream pt(pairtok);
        Vertex u, v;
        if (!(pt >> u)) continue;
        if (!(pt >> v)) throw Error("merge file: incomplete pair at line " + std::to_string(lineno));
        step.resolved.push_back(pair_key(u, v));
      }
    } else {
      throw Error("merge file: unexpected token '" + word + "' at line " +
                  std::to_string(lineno));
    }
  }
  flush();
  return ms;
}

void write_merge(std::ostream& out, const MergeSequence& ms) {
  for (size_t t = 0; t < ms.steps.size(); ++t) {
    out << "step " << (t + 1) << '\n';
    out << "parts:";
    for (const auto& part : ms.steps[t].parts.parts()) {
      out << " {";
      for (size_t i = 0; i < part.size(); ++i) out << (i ? " " : "") << part[i];
      out << "}";
    }
    out << '\n';
    out << "resolved:";
    const auto& res = ms.steps[t].resolved;
    for (size_t i = 0; i < res.size(); ++i)
      out << (i ? "; " : " ") << pair_lo(res[i]) << ' ' << pair_hi(res[i]);
    out << '\n';
  }
}

}  // namespace mw
