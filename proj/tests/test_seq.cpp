#include <sstream>

#include "doctest.h"
#include "mw/seq.hpp"
#include "oracles.hpp"

using namespace mw;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

ConstructionSequence k3_sequence() {
  ConstructionSequence cs;
  cs.graph = complete_graph(3);
  cs.ops = {{OpKind::Merge, 1, 2, 0}, {OpKind::Merge, 1, 3, 0}, {OpKind::ResolvePos, 1, 1, 0}};
  return cs;
}

// All edges resolved among singletons, then ascending merges, final res-.
ConstructionSequence trivial_cs(const Graph& g) {
  ConstructionSequence cs;
  cs.graph = g;
  for (auto [u, v] : g.edges()) cs.ops.push_back({OpKind::ResolvePos, u, v, 0});
  for (Vertex v = 2; v <= g.n(); ++v) cs.ops.push_back({OpKind::Merge, 1, v, 0});
  cs.ops.push_back({OpKind::ResolveNeg, 1, 1, 0});
  return cs;
}

}  // namespace

TEST_CASE("replay basics") {
  ConstructionSequence k2;
  k2.graph = complete_graph(2);
  k2.ops = {{OpKind::ResolvePos, 1, 2, 0}, {OpKind::Merge, 1, 2, 0}};
  GraphReplay rp(k2.graph);
  for (const auto& op : k2.ops) CHECK_FALSE(rp.apply(op).has_value());
  CHECK(rp.part_count() == 1);
  CHECK(rp.resolved(1, 2));
  CHECK(rp.resolved_edge_count() == 1);

  // empty op list on a 1-vertex graph: the single initial snapshot is fine
  ConstructionSequence one;
  one.graph = Graph(1);
  CHECK(validate_construction(one).ok);

  // K_3 via merges then one self-resolve: final E = all 3 pairs
  auto snaps = oracle::naive_replay(k3_sequence());
  CHECK(snaps.back().resolved ==
        std::set<PairKey>{pair_key(1, 2), pair_key(1, 3), pair_key(2, 3)});
  CHECK(validate_construction(k3_sequence()).ok);
}

TEST_CASE("validation errors") {
  ConstructionSequence bad;
  bad.graph = path_graph(3);
  bad.ops = {{OpKind::ResolveNeg, 1, 2, 0}};
  auto rep = validate_construction(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.index == 1);
  CHECK(rep.error.find("polarity conflict") != std::string::npos);

  ConstructionSequence incomplete;
  incomplete.graph = path_graph(3);
  incomplete.ops = {{OpKind::Merge, 1, 2, 0}, {OpKind::Merge, 1, 3, 0}};
  rep = validate_construction(incomplete);
  CHECK_FALSE(rep.ok);
  CHECK(rep.error.find("incomplete") != std::string::npos);

  ConstructionSequence out_of_range;
  out_of_range.graph = path_graph(3);
  out_of_range.ops = {{OpKind::ResolvePos, 1, 7, 0}};
  rep = validate_construction(out_of_range);
  CHECK_FALSE(rep.ok);
  CHECK(rep.error.find("out of range") != std::string::npos);

  ConstructionSequence same_part;
  same_part.graph = complete_graph(2);
  same_part.ops = {{OpKind::Merge, 1, 2, 0}, {OpKind::Merge, 1, 2, 0}};
  rep = validate_construction(same_part);
  CHECK_FALSE(rep.ok);
  CHECK(rep.index == 2);
}

TEST_CASE("widths against the brute-force oracle") {
  // P_5 trivial sequence: width 3 at r=1 and 5 at r=2 (frozen from oracle)
  auto cs = trivial_cs(path_graph(5));
  CHECK(oracle::naive_construction_width(cs, 1) == 3);
  CHECK(oracle::naive_construction_width(cs, 2) == 5);
  CHECK(width_of_construction(cs, 1) == 3);
  CHECK(width_of_construction(cs, 2) == 5);

  // K_n: merge everything, one final positive self-resolve -> width 1
  for (int n : {2, 4, 6}) {
    ConstructionSequence kn;
    kn.graph = complete_graph(n);
    for (Vertex v = 2; v <= n; ++v) kn.ops.push_back({OpKind::Merge, 1, v, 0});
    kn.ops.push_back({OpKind::ResolvePos, 1, 1, 0});
    CHECK(validate_construction(kn).ok);
    for (int r : {1, 2, kRadiusInf}) CHECK(width_of_construction(kn, r) == 1);
  }

  // random-ish sequences: library width equals oracle width
  for (int n : {5, 6, 7}) {
    auto g = path_graph(n);
    g.add_edge(1, n);  // cycle
    auto c = trivial_cs(g);
    for (int r : {1, 2, 3, kRadiusInf})
      CHECK(width_of_construction(c, r) == oracle::naive_construction_width(c, r));
  }
}

TEST_CASE("construction to merge sequence") {
  ConstructionSequence k2;
  k2.graph = complete_graph(2);
  k2.ops = {{OpKind::ResolvePos, 1, 2, 0}, {OpKind::Merge, 1, 2, 0}};
  auto ms = construction_to_merge(k2);
  REQUIRE(ms.steps.size() == 3);
  CHECK(ms.steps[0].parts.part_count() == 2);
  CHECK(ms.steps[0].resolved.empty());
  CHECK(ms.steps[1].parts.part_count() == 2);
  CHECK(ms.steps[1].resolved == std::vector<PairKey>{pair_key(1, 2)});
  CHECK(ms.steps[2].parts.part_count() == 1);
  CHECK(ms.steps[2].resolved == std::vector<PairKey>{pair_key(1, 2)});
  CHECK(validate_merge(ms, k2.graph).ok);

  // width-1 K_n sequence converts to a width-1 merge sequence
  ConstructionSequence kn;
  kn.graph = complete_graph(5);
  for (Vertex v = 2; v <= 5; ++v) kn.ops.push_back({OpKind::Merge, 1, v, 0});
  kn.ops.push_back({OpKind::ResolvePos, 1, 1, 0});
  auto msn = construction_to_merge(kn);
  CHECK(validate_merge(msn, kn.graph).ok);
  CHECK(width_of_merge(msn, 1) == 1);
  CHECK(oracle::naive_merge_width(msn, 1) == 1);
}

TEST_CASE("width equality across conversion, all radii") {
  std::vector<ConstructionSequence> corpus;
  corpus.push_back(trivial_cs(path_graph(6)));
  corpus.push_back(k3_sequence());
  {
    Graph g = path_graph(6);
    g.add_edge(1, 6);
    g.add_edge(2, 5);
    corpus.push_back(trivial_cs(g));
  }
  for (const auto& cs : corpus) {
    auto ms = construction_to_merge(cs);
    for (int r : {1, 2, 3, kRadiusInf}) {
      int wc = width_of_construction(cs, r);
      int wm = width_of_merge(ms, r);
      CHECK(wc == wm);
      CHECK(wm == oracle::naive_merge_width(ms, r));
    }
  }
}

TEST_CASE("merge sequence validation errors") {
  // swap two partitions to break coarsening
  auto ms = construction_to_merge(k3_sequence());
  std::swap(ms.steps[1].parts, ms.steps[2].parts);
  auto rep = validate_merge(ms, complete_graph(3));
  CHECK_FALSE(rep.ok);
  CHECK(rep.error.find("coarser") != std::string::npos);

  // delete a pair from R_m on K_2: homogeneity breaks on the merged part
  ConstructionSequence k2;
  k2.graph = complete_graph(2);
  k2.ops = {{OpKind::ResolvePos, 1, 2, 0}, {OpKind::Merge, 1, 2, 0}};
  auto ms2 = construction_to_merge(k2);
  Graph g2_split(2);  // edgeless companion: K_2's edge now unresolved & mixed
  ms2.steps[2].resolved.clear();
  ms2.steps[1].resolved.clear();
  // with the pair removed everywhere and parts merged, AB - R_t = {12} must
  // be homogeneous, which holds; break it with a graph mismatch instead
  (void)g2_split;
  MergeSequence holed;
  holed.n = 3;
  Partition p0(3), p1(3);
  p1.merge(1, 2);
  Partition p2 = p1;
  p2.merge(1, 3);
  holed.steps = {{p0, {}}, {p1, {}}, {p2, {}}};
  // graph: edge only between 1 and 3 -> part {12} vs {3} mixed off R
  Graph g3(3);
  g3.add_edge(1, 3);
  auto rep2 = validate_merge(holed, g3);
  CHECK_FALSE(rep2.ok);
  CHECK(rep2.error.find("homogeneity") != std::string::npos);
}

TEST_CASE("merge to construction round trip") {
  // trivial 2-step ms of the edgeless graph: merges plus one final res-
  MergeSequence ms;
  ms.n = 4;
  Partition p0(4), p1(4);
  p1.merge(1, 2);
  p1.merge(1, 3);
  p1.merge(1, 4);
  ms.steps = {{p0, {}}, {p1, {}}};
  Graph edgeless(4);
  auto cs = merge_to_construction(ms, edgeless);
  CHECK(validate_construction(cs).ok);
  int merges = 0, negs = 0;
  for (const auto& op : cs.ops) {
    if (op.kind == OpKind::Merge) ++merges;
    if (op.kind == OpKind::ResolveNeg) ++negs;
  }
  CHECK(merges == 3);
  CHECK(negs == 1);

  // round trip ms -> cs -> ms preserves radius-r width
  auto corpus = trivial_cs(path_graph(7));
  auto ms1 = construction_to_merge(corpus);
  auto cs1 = merge_to_construction(ms1, corpus.graph);
  CHECK(validate_construction(cs1).ok);
  auto ms2 = construction_to_merge(cs1);
  for (int r : {1, 2, kRadiusInf})
    CHECK(width_of_merge(ms1, r) == width_of_merge(ms2, r));
}

TEST_CASE("normalize_effective") {
  // duplicated resolve gets dropped
  ConstructionSequence cs;
  cs.graph = complete_graph(2);
  cs.ops = {{OpKind::ResolvePos, 1, 2, 0},
            {OpKind::ResolvePos, 1, 2, 0},
            {OpKind::Merge, 1, 2, 0}};
  auto norm = normalize_effective(cs);
  CHECK(norm.ops.size() == 2);
  CHECK(validate_construction(norm).ok);

  // postponement keeps the final snapshot and never increases radius-1 width
  Graph g = path_graph(6);
  auto triv = trivial_cs(g);
  auto n2 = normalize_effective(triv);
  CHECK(validate_construction(n2).ok);
  CHECK(width_of_construction(n2, 1) <= width_of_construction(triv, 1));
  auto end_orig = oracle::naive_replay(triv).back();
  auto end_norm = oracle::naive_replay(n2).back();
  CHECK(end_orig.parts == end_norm.parts);
  CHECK(end_orig.resolved == end_norm.resolved);

  // length bound (2w+1) n with w the radius-1 width of the output
  int w = width_of_construction(n2, 1);
  CHECK(static_cast<int>(n2.ops.size()) <= (2 * w + 1) * g.n());
}

TEST_CASE("construction file io round trip") {
  auto cs = trivial_cs(path_graph(4));
  std::ostringstream out;
  write_construction(out, cs);
  std::istringstream in(out.str());
  auto back = read_construction(in, cs.graph);
  CHECK(back.ops.size() == cs.ops.size());
  for (size_t i = 0; i < cs.ops.size(); ++i) {
    CHECK(back.ops[i].kind == cs.ops[i].kind);
    CHECK(back.ops[i].u == cs.ops[i].u);
    CHECK(back.ops[i].v == cs.ops[i].v);
  }
}

TEST_CASE("merge file io round trip") {
  auto ms = construction_to_merge(trivial_cs(path_graph(4)));
  std::ostringstream out;
  write_merge(out, ms);
  std::istringstream in(out.str());
  auto back = read_merge(in, 4);
  REQUIRE(back.steps.size() == ms.steps.size());
  for (size_t t = 0; t < ms.steps.size(); ++t) {
    CHECK(back.steps[t].parts == ms.steps[t].parts);
    CHECK(back.steps[t].resolved == ms.steps[t].resolved);
  }
}

TEST_CASE("structure mode replay and lift") {
  ConstructionSequence k2;
  k2.graph = complete_graph(2);
  k2.ops = {{OpKind::ResolvePos, 1, 2, 0}, {OpKind::Merge, 1, 2, 0}};
  auto lifted = lift_to_structure(k2);
  CHECK(lifted.ops.size() == 3);
  CHECK(validate_construction(lifted).ok);
  auto states = replay_structure(lifted);
  CHECK(states.back().parts.part_count() == 1);
  CHECK(states.back().base.has_pair(intern_name("E"), 1, 2));
  CHECK(states.back().base.has_pair(intern_name("E"), 2, 1));
}
