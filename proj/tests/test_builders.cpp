#include <set>

#include "doctest.h"
#include "mw/builders.hpp"
#include "mw/gen.hpp"
#include "oracles.hpp"

using namespace mw;

TEST_CASE("degeneracy order") {
  auto [ot, dt] = degeneracy_order(gen::tree(20, 7));
  CHECK(dt == 1);
  auto [ok4, dk4] = degeneracy_order(gen::complete(4));
  CHECK(dk4 == 3);

  // 2-out random digraph underlying graph: every subgraph has <= 2|V'|
  // edges, so degeneracy <= 4; back-check over the produced order.
  Graph g = gen::d_out(200, 2, 11);
  auto [order, d] = degeneracy_order(g);
  CHECK(d <= 4);
  CHECK(back_degree(g, order) == d);
  for (Vertex v = 1; v <= g.n(); ++v) {
    int back = 0;
    for (Vertex w : g.neighbors(v))
      if (order.rank(w) < order.rank(v)) ++back;
    CHECK(back <= d);
  }
}

TEST_CASE("trivial sequence widths") {
  auto p5 = trivial_sequence(gen::path(5));
  CHECK(validate_construction(p5).ok);
  CHECK(width_of_construction(p5, 1) == 3);

  auto e = trivial_sequence(Graph(6));
  CHECK(validate_construction(e).ok);
  for (int r : {1, 3, kRadiusInf}) CHECK(width_of_construction(e, r) == 1);

  // random 3-regular, r=2: width <= 1 + 3 + 9 = 13
  Graph reg = gen::regular(50, 3, 3);
  auto cs = trivial_sequence(reg);
  CHECK(validate_construction(cs).ok);
  CHECK(width_of_construction(cs, 2) <= 13);

  // ball-size bound at each radius
  for (int r : {1, 2, 3}) {
    int bound = 0, pw = 1;
    for (int i = 0; i <= r; ++i) {
      bound += pw;
      pw *= reg.max_degree();
    }
    CHECK(width_of_construction(cs, r) <= bound);
  }
}

TEST_CASE("from_degeneracy") {
  // star K_{1,4}: degeneracy 1, width_1 <= 3
  Graph star = gen::star(4);
  auto [order, d] = degeneracy_order(star);
  CHECK(d == 1);
  auto cs = from_degeneracy(star, order);
  CHECK(validate_construction(cs).ok);
  CHECK(width_of_construction(cs, 1) <= 3);

  // K_2 gives a valid 3-op sequence
  auto k2cs = from_degeneracy(gen::complete(2), VertexOrder::identity(2));
  CHECK(k2cs.ops.size() == 3);
  CHECK(validate_construction(k2cs).ok);

  // random 2-degenerate, n=300: width_1 <= 4
  Graph g = gen::d_degenerate(300, 2, 5);
  auto [o2, d2] = degeneracy_order(g);
  CHECK(d2 <= 2);
  auto cs2 = from_degeneracy(g, o2);
  CHECK(validate_construction(cs2, {.homogeneity_diagnostics = false}).ok);
  CHECK(width_of_construction(cs2, 1) <= d2 + 2);

  // oracle agreement on a small instance
  Graph small = gen::d_degenerate(9, 2, 17);
  auto [os, ds] = degeneracy_order(small);
  auto css = from_degeneracy(small, os);
  CHECK(width_of_construction(css, 1) == oracle::naive_construction_width(css, 1));
}

TEST_CASE("wreach sets") {
  // path graph, left-to-right order, r=2: wreach(v) = {v-2, v-1, v} clipped
  Graph p = gen::path(7);
  auto order = VertexOrder::identity(7);
  auto sets2 = wreach_sets(p, order, 2);
  for (Vertex v = 1; v <= 7; ++v) {
    std::vector<Vertex> expect;
    for (Vertex u = std::max(1, v - 2); u <= v; ++u) expect.push_back(u);
    CHECK(sets2[v] == expect);
  }
  // r=1: smaller neighbors plus self
  auto sets1 = wreach_sets(p, order, 1);
  for (Vertex v = 2; v <= 7; ++v) {
    CHECK(sets1[v] == std::vector<Vertex>{v - 1, v});
  }
  // wcol_r on the path is at most r+1
  for (int r : {1, 2, 3}) CHECK(wcol_value(p, order, r) <= r + 1);

  // exhaustive path-enumeration oracle on a small random graph
  Graph g = gen::gnm(8, 11, 23);
  for (int r : {1, 2}) {
    auto sets = wreach_sets(g, order = VertexOrder::identity(8), r);
    for (Vertex v = 1; v <= 8; ++v)
      for (Vertex u = 1; u <= 8; ++u) {
        // DFS over all paths from v of length <= r with vertices >= u
        bool reachable = false;
        std::vector<std::pair<Vertex, int>> stack{{v, 0}};
        std::set<std::pair<Vertex, int>> seen;
        while (!stack.empty()) {
          auto [x, len] = stack.back();
          stack.pop_back();
          if (x == u) {
            reachable = true;
            break;
          }
          if (len == r) continue;
          for (Vertex y : g.neighbors(x))
            if (y >= u && seen.insert({y, len + 1}).second) stack.push_back({y, len + 1});
        }
        if (v < u) reachable = false;
        bool in_set = std::binary_search(sets[v].begin(), sets[v].end(), u);
        CHECK(in_set == reachable);
      }
  }
}

TEST_CASE("from_wcol_order") {
  // path with the natural order, r=1: valid and width_1 <= 3 * 2^k
  Graph p = gen::path(9);
  auto order = VertexOrder::identity(9);
  auto ms = from_wcol_order(p, order, 1);
  CHECK(validate_merge(ms, p).ok);
  int k = wcol_value(p, order, 2);  // = 3: wreach includes the vertex itself
  CHECK(k == 3);
  CHECK(width_of_merge(ms, 1) <= 3 * (1 << k));
  CHECK(width_of_merge(ms, 1) <= 12);

  // tree with degeneracy order, r=2
  Graph t = gen::tree(18, 9);
  auto [dorder, dd] = degeneracy_order(t);
  auto ms2 = from_wcol_order(t, dorder, 2);
  CHECK(validate_merge(ms2, t).ok);
  int k3 = wcol_value(t, dorder, 3);
  CHECK(width_of_merge(ms2, 2) <= 3 * (1 << k3));

  // edgeless graph: width 1 at all steps
  Graph e(6);
  auto mse = from_wcol_order(e, VertexOrder::identity(6), 1);
  CHECK(validate_merge(mse, e).ok);
  CHECK(width_of_merge(mse, kRadiusInf) == 1);
}

TEST_CASE("from_contraction") {
  // n=2 single merge
  ContractionSequence c2{{{1, 2}}};
  auto conv2 = from_contraction(gen::complete(2), c2);
  CHECK(validate_merge(conv2.ms, gen::complete(2)).ok);

  // cograph (complete bipartite) admits red-degree-0 contractions
  Graph kb = gen::complete_bipartite(3, 3);
  ContractionSequence cb{{{1, 2}, {1, 3}, {4, 5}, {4, 6}, {1, 4}}};
  auto convb = from_contraction(kb, cb);
  CHECK(convb.realized_red_degree == 0);
  CHECK(validate_merge(convb.ms, kb).ok);
  for (int r : {1, 2, kRadiusInf}) CHECK(width_of_merge(convb.ms, r) <= 2);

  // greedy contraction of a random graph: bound 2 + d + ... + d^r holds
  Graph g = gen::gnm(24, 40, 31);
  auto c = greedy_contraction(g);
  auto conv = from_contraction(g, c);
  CHECK(validate_merge(conv.ms, g).ok);
  int d = conv.realized_red_degree;
  for (int r : {1, 2}) {
    long long bound = 2, pw = 1;
    for (int i = 1; i <= r; ++i) {
      pw *= d;
      bound += pw;
    }
    CHECK(width_of_merge(conv.ms, r) <= bound);
  }
  // oracle agreement on widths
  CHECK(width_of_merge(conv.ms, 1) == oracle::naive_merge_width(conv.ms, 1));
}

TEST_CASE("atomic complexity") {
  Graph g = gen::gnm(12, 20, 41);
  auto pi0 = atomic_complexity(g, 0);
  CHECK(pi0.value == 1);
  CHECK(pi0.exact);

  Graph e(8);
  for (int s : {1, 2, 3, 7}) {
    auto pi = atomic_complexity(e, s);
    CHECK(pi.value == s + 1);
  }

  int prev = 0;
  for (int s = 0; s <= 4; ++s) {
    auto pi = atomic_complexity(g, s);
    CHECK(pi.exact);
    CHECK(pi.value <= s + (1 << s));
    CHECK(pi.value >= prev);
    prev = pi.value;
  }
}

TEST_CASE("near twins") {
  // K_{t,t}: same-side twins at gap 0
  Graph ktt = gen::complete_bipartite(4, 4);
  std::vector<uint8_t> sides(9, 0);
  for (int v = 5; v <= 8; ++v) sides[v] = 1;
  auto twins = min_near_twin_gap(ktt, sides);
  CHECK(twins.gap == 0);

  // C_6 with its bipartition: gap 2
  Graph c6 = gen::cycle(6);
  std::vector<uint8_t> csides(7, 0);
  for (int v : {2, 4, 6}) csides[v] = 1;
  auto tg = min_near_twin_gap(c6, csides);
  CHECK(tg.gap == 2);

  // not a bipartition -> error
  std::vector<uint8_t> bad(7, 0);
  CHECK_THROWS_AS(min_near_twin_gap(c6, bad), Error);
}

TEST_CASE("near twins vs width-1 sequences") {
  // bipartite graph with a validated radius-1 width k sequence has a
  // same-side pair at gap <= 2k
  Graph g = gen::bipartite(7, 7, 0.4, 57);
  auto [order, d] = degeneracy_order(g);
  auto cs = from_degeneracy(g, order);
  REQUIRE(validate_construction(cs).ok);
  int k = width_of_construction(cs, 1);
  std::vector<uint8_t> sides(15, 0);
  for (int v = 8; v <= 14; ++v) sides[v] = 1;
  auto tg = min_near_twin_gap(g, sides);
  CHECK(tg.gap <= 2 * k);
}
