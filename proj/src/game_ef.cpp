#include "mw/game_ef.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mw/bfs.hpp"
#include "mw/rho.hpp"

namespace mw {

namespace {

struct Side {
  const BinaryStructure* s;
  std::vector<std::vector<int>> dist;                 // exact, n+1 = far
  std::map<PredId, std::vector<int>> pred_dist;       // per nonempty unary

  explicit Side(const BinaryStructure& str) : s(&str) {
    Graph g = gaifman_graph(str);
    int n = str.n();
    dist.resize(n + 1);
    for (Vertex v = 1; v <= n; ++v) dist[v] = bfs_distances(g, {v}, n);
    for (PredId u : str.unary_names()) {
      auto members = str.unary_members(u);
      if (!members.empty()) pred_dist[u] = bfs_distances(g, members, n);
    }
  }

  int n() const { return s->n(); }
  int d(Vertex u, Vertex v) const { return u == v ? 0 : dist[u][v]; }
  int pd(PredId p, Vertex v) const {
    auto it = pred_dist.find(p);
    return it == pred_dist.end() ? n() + 1 : it->second[v];
  }
  bool rel(PredId r, Vertex u, Vertex v) const {
    return s->has_binary(r) && s->has_pair(r, u, v);
  }
};

// Clamped-value equality of the quantifier-free dist-FO facts at rank (k,q).
bool atp_equal(const Side& a, const Side& b, const std::vector<Vertex>& ta,
               const std::vector<Vertex>& tb, int k, int q) {
  int len = static_cast<int>(ta.size());
  int rho_eff = rho_clamped(k, q, std::max(a.n(), b.n()) + 2);
  std::set<PredId> unary;
  for (auto& [p, _] : a.pred_dist) unary.insert(p);
  for (auto& [p, _] : b.pred_dist) unary.insert(p);
  std::set<PredId> rels;
  for (PredId r : a.s->binary_names()) rels.insert(r);
  for (PredId r : b.s->binary_names()) rels.insert(r);
  auto clamp_u = [&](const Side& s, PredId p, Vertex v) {
    int d = s.pd(p, v);
    return (d <= s.n() && d <= rho_eff - 1) ? d : -1;
  };
  auto clamp_p = [&](const Side& s, Vertex u, Vertex v) {
    int d = s.d(u, v);
    return (d <= s.n() && d <= rho_eff) ? d : -1;
  };
  for (int i = 0; i < len; ++i) {
    for (PredId p : unary)
      if (clamp_u(a, p, ta[i]) != clamp_u(b, p, tb[i])) return false;
    for (PredId r : rels)
      if (a.rel(r, ta[i], ta[i]) != b.rel(r, tb[i], tb[i])) return false;
  }
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j) {
      if ((ta[i] == ta[j]) != (tb[i] == tb[j])) return false;
      if (clamp_p(a, ta[i], ta[j]) != clamp_p(b, tb[i], tb[j])) return false;
      for (PredId r : rels) {
        if (a.rel(r, ta[i], ta[j]) != b.rel(r, tb[i], tb[j])) return false;
        if (a.rel(r, ta[j], ta[i]) != b.rel(r, tb[j], tb[i])) return false;
      }
    }
  return true;
}

struct GameMemo {
  std::map<std::tuple<std::vector<Vertex>, std::vector<Vertex>, int, int>, bool> table;
};

bool wins(const Side& a, const Side& b, std::vector<Vertex>& ta, std::vector<Vertex>& tb,
          int k, int q, GameMemo& memo) {
  auto key = std::make_tuple(ta, tb, k, q);
  if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  bool result;
  if (!atp_equal(a, b, ta, tb, k, q)) {
    result = false;
  } else if (q == 0) {
    result = true;
  } else {
    result = true;
    // Spoiler moves in A, Duplicator answers in B.
    for (Vertex x = 1; x <= a.n() && result; ++x) {
      bool answered = false;
      for (Vertex y = 1; y <= b.n() && !answered; ++y) {
        ta.push_back(x);
        tb.push_back(y);
        answered = wins(a, b, ta, tb, k + 1, q - 1, memo);
        ta.pop_back();
        tb.pop_back();
      }
      result = answered;
    }
    // Spoiler moves in B, Duplicator answers in A.
    for (Vertex y = 1; y <= b.n() && result; ++y) {
      bool answered = false;
      for (Vertex x = 1; x <= a.n() && !answered; ++x) {
        ta.push_back(x);
        tb.push_back(y);
        answered = wins(a, b, ta, tb, k + 1, q - 1, memo);
        ta.pop_back();
        tb.pop_back();
      }
      result = answered;
    }
  }
  memo.table.emplace(std::move(key), result);
  return result;
}

}  // namespace

bool duplicator_wins_global(const BinaryStructure& a, const BinaryStructure& b,
                            const std::vector<Vertex>& ta, const std::vector<Vertex>& tb,
                            int k, int q) {
  MW_CHECK(ta.size() == tb.size(), "tuple length mismatch");
  MW_CHECK(static_cast<int>(ta.size()) <= k, "tuples longer than k");
  MW_CHECK(a.n() + b.n() <= 20 && q <= 3, "game search guard exceeded (n_A+n_B<=20, q<=3)");
  Side sa(a), sb(b);
  GameMemo memo;
  std::vector<Vertex> wa = ta, wb = tb;
  return wins(sa, sb, wa, wb, k, q, memo);
}

}  // namespace mw
