#include <sstream>

#include "doctest.h"
#include "mw/bfs.hpp"
#include "mw/io.hpp"
#include "mw/structure.hpp"

using namespace mw;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(1, n);
  return g;
}

PartitionedStructure resolved_path3() {
  // path 1-2-3 with singleton parts and E resolved
  BinaryStructure base(3);
  PredId e = intern_name("E");
  base.add_binary(e);
  base.add_pair(e, 1, 2);
  base.add_pair(e, 2, 1);
  base.add_pair(e, 2, 3);
  base.add_pair(e, 3, 2);
  return PartitionedStructure(base, Partition(3));
}

}  // namespace

TEST_CASE("gaifman graph from relations") {
  BinaryStructure s(3);
  PredId e = intern_name("E");
  s.add_binary(e);
  s.add_pair(e, 1, 2);
  Graph g = gaifman_graph(s);
  CHECK(g.has_edge(1, 2));
  CHECK(g.m() == 1);

  PredId nrel = intern_name("N");
  s.add_binary(nrel);
  s.add_pair(nrel, 2, 3);
  g = gaifman_graph(s);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 3));
  CHECK(g.m() == 2);

  BinaryStructure empty(4);
  empty.add_binary(intern_name("R1"));
  CHECK(gaifman_graph(empty).m() == 0);
}

TEST_CASE("bfs distances clamp at cap+1") {
  Graph p3 = path_graph(3);
  auto d = bfs_distances(p3, {1}, 2);
  CHECK(d[3] == 2);

  Graph two(2);  // disconnected pair
  for (int cap : {0, 1, 5}) {
    auto dd = bfs_distances(two, {1}, cap);
    CHECK(dd[2] == cap + 1);
  }

  Graph c6 = cycle_graph(6);
  auto d6 = bfs_distances(c6, {1}, c6.n());
  CHECK(d6[4] == 3);

  auto dempty = bfs_distances(p3, {}, 2);
  for (int v = 1; v <= 3; ++v) CHECK(dempty[v] == 3);
}

TEST_CASE("reach sets") {
  auto s = resolved_path3();
  auto r1 = reach_set(s, {2}, 1);
  CHECK(r1 == std::vector<PredId>{part_pred(1), part_pred(2), part_pred(3)});
  auto r0 = reach_set(s, {1}, 0);
  CHECK(r0 == std::vector<PredId>{part_pred(1)});

  BinaryStructure edgeless(4);
  edgeless.add_binary(intern_name("E"));
  PartitionedStructure ps(edgeless, Partition(4));
  auto r5 = reach_set(ps, {2}, 5);
  CHECK(r5 == std::vector<PredId>{part_pred(2)});
}

TEST_CASE("radius width") {
  BinaryStructure edgeless(5);
  edgeless.add_binary(intern_name("E"));
  PartitionedStructure singles(edgeless, Partition(5));
  CHECK(radius_width(singles, 3) == 1);

  CHECK(radius_width(resolved_path3(), 1) == 3);

  // K_5 merged into one part, all edges resolved: width 1 at any radius.
  BinaryStructure k5(5);
  PredId e = intern_name("E");
  k5.add_binary(e);
  for (int u = 1; u <= 5; ++u)
    for (int v = 1; v <= 5; ++v)
      if (u != v) k5.add_pair(e, u, v);
  Partition one(5);
  for (int v = 2; v <= 5; ++v) one.merge(1, v);
  PartitionedStructure merged(k5, one);
  CHECK(radius_width(merged, 2) == 1);
}

TEST_CASE("radius width monotone in r") {
  auto s = resolved_path3();
  int prev = 0;
  for (int r : {0, 1, 2, 3}) {
    int w = radius_width(s, r);
    CHECK(w >= prev);
    prev = w;
  }
  CHECK(radius_width(s, kRadiusInf) >= prev);
}

TEST_CASE("apply_merge and apply_resolve") {
  BinaryStructure base(3);
  PredId e = intern_name("E");
  PredId nrel = intern_name("N");
  base.add_binary(e);
  base.add_binary(nrel);
  PartitionedStructure s(base, Partition(3));

  auto merged = apply_merge(s, 1, 2);
  CHECK(merged.parts.rep(2) == 1);
  CHECK(merged.parts.rep(3) == 3);
  // merges never add Gaifman edges
  CHECK(gaifman_graph(merged.base) == gaifman_graph(s.base));

  auto resolved = apply_resolve(s, e, 1, 2);
  CHECK(resolved.base.has_pair(e, 1, 2));
  CHECK_FALSE(resolved.base.has_pair(e, 2, 1));
  // resolve is idempotent
  auto twice = apply_resolve(resolved, e, 1, 2);
  CHECK(twice.base == resolved.base);
  // resolving N on a pair already in E leaves N unchanged there
  auto n_after = apply_resolve(resolved, nrel, 1, 2);
  CHECK_FALSE(n_after.base.has_pair(nrel, 1, 2));
  // resolves only add Gaifman edges
  Graph g0 = gaifman_graph(s.base), g1 = gaifman_graph(resolved.base);
  for (auto [u, v] : g0.edges()) CHECK(g1.has_edge(u, v));

  // merge commutativity: P<-Q then P<-R equals P<-R then P<-Q
  BinaryStructure b4(4);
  b4.add_binary(e);
  PartitionedStructure s4(b4, Partition(4));
  auto ab = apply_merge(apply_merge(s4, 1, 2), 1, 3);
  auto ba = apply_merge(apply_merge(s4, 1, 3), 1, 2);
  CHECK(ab.parts == ba.parts);

  CHECK_THROWS_AS(apply_resolve(s, intern_name("missing_rel"), 1, 2), Error);
}

TEST_CASE("graph file io") {
  std::istringstream in("3 2\n1 2\n2 3\n");
  Graph g = read_graph(in);
  CHECK(g.n() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 3));
  CHECK_FALSE(g.has_edge(1, 3));

  std::ostringstream out;
  write_graph(out, g);
  std::istringstream back(out.str());
  CHECK(read_graph(back) == g);

  std::istringstream dup("2 2\n1 2\n2 1\n");
  CHECK_THROWS_AS(read_graph(dup), Error);
  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS_AS(read_graph(loop), Error);
}

TEST_CASE("structure file io") {
  std::istringstream in(
      "structure 4\n"
      "unary C: 1 3\n"
      "binary E: 1 2; 2 1; 3 4\n");
  BinaryStructure s = read_structure(in);
  CHECK(s.n() == 4);
  CHECK(s.in_unary(intern_name("C"), 1));
  CHECK_FALSE(s.in_unary(intern_name("C"), 2));
  CHECK(s.has_pair(intern_name("E"), 3, 4));
  CHECK_FALSE(s.has_pair(intern_name("E"), 4, 3));

  std::ostringstream out;
  write_structure(out, s);
  std::istringstream back(out.str());
  CHECK(read_structure(back) == s);
}

TEST_CASE("order file io") {
  std::istringstream in("2\n3\n1\n");
  auto order = read_order(in, 3);
  CHECK(order == std::vector<Vertex>{2, 3, 1});
  std::istringstream bad("1\n1\n2\n");
  CHECK_THROWS_AS(read_order(bad, 3), Error);
}
