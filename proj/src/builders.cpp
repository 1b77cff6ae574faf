#include "mw/builders.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace mw {

VertexOrder::VertexOrder(std::vector<Vertex> by_rank) : by_rank_(std::move(by_rank)) {
  int n = static_cast<int>(by_rank_.size());
  rank_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    Vertex v = by_rank_[i];
    MW_CHECK(v >= 1 && v <= n && rank_[v] == 0, "order is not a permutation");
    rank_[v] = i + 1;
  }
}

VertexOrder VertexOrder::identity(int n) {
  std::vector<Vertex> by_rank(n);
  for (int i = 0; i < n; ++i) by_rank[i] = i + 1;
  return VertexOrder(std::move(by_rank));
}

std::pair<VertexOrder, int> degeneracy_order(const Graph& g) {
  int n = g.n();
  std::vector<int> deg(n + 1);
  std::vector<std::vector<Vertex>> buckets(n + 1);
  for (Vertex v = 1; v <= n; ++v) {
    deg[v] = g.degree(v);
    buckets[deg[v]].push_back(v);
  }
  std::vector<uint8_t> removed(n + 1, 0);
  std::vector<Vertex> removal;
  removal.reserve(n);
  int d = 0;
  int cursor = 0;
  while (static_cast<int>(removal.size()) < n) {
    while (cursor <= n && buckets[cursor].empty()) ++cursor;
    Vertex v = 0;
    auto& bucket = buckets[cursor];
    while (!bucket.empty()) {
      Vertex c = bucket.back();
      bucket.pop_back();
      if (!removed[c] && deg[c] == cursor) {
        v = c;
        break;
      }
    }
    if (v == 0) continue;
    removed[v] = 1;
    removal.push_back(v);
    d = std::max(d, deg[v]);
    for (Vertex w : g.neighbors(v)) {
      if (!removed[w]) {
        --deg[w];
        buckets[deg[w]].push_back(w);
        if (deg[w] < cursor) cursor = deg[w];
      }
    }
  }
  std::vector<Vertex> by_rank(removal.rbegin(), removal.rend());
  return {VertexOrder(std::move(by_rank)), d};
}

int back_degree(const Graph& g, const VertexOrder& order) {
  int best = 0;
  for (Vertex v = 1; v <= g.n(); ++v) {
    int c = 0;
    for (Vertex w : g.neighbors(v))
      if (order.rank(w) < order.rank(v)) ++c;
    best = std::max(best, c);
  }
  return best;
}

ConstructionSequence trivial_sequence(const Graph& g) {
  ConstructionSequence cs;
  cs.mode = SeqMode::Graph;
  cs.graph = g;
  for (auto [u, v] : g.edges()) cs.ops.push_back({OpKind::ResolvePos, u, v, 0});
  for (Vertex v = 2; v <= g.n(); ++v) cs.ops.push_back({OpKind::Merge, 1, v, 0});
  if (g.n() >= 2) cs.ops.push_back({OpKind::ResolveNeg, 1, 1, 0});
  return cs;
}

ConstructionSequence from_degeneracy(const Graph& g, const VertexOrder& order) {
  MW_CHECK(order.n() == g.n(), "order size mismatch");
  ConstructionSequence cs;
  cs.mode = SeqMode::Graph;
  cs.graph = g;
  int n = g.n();
  if (n == 0) return cs;
  // Frontiers run from the largest vertex down; each frontier resolves
  // positively with its still-singleton (smaller) neighbors, then joins the
  // growing part.
  Vertex anchor = order.at_rank(n);
  for (int t = 1; t <= n; ++t) {
    Vertex frontier = order.at_rank(n - t + 1);
    std::vector<Vertex> smaller;
    for (Vertex w : g.neighbors(frontier))
      if (order.rank(w) < order.rank(frontier)) smaller.push_back(w);
    std::sort(smaller.begin(), smaller.end());
    for (Vertex w : smaller) cs.ops.push_back({OpKind::ResolvePos, frontier, w, 0});
    if (t >= 2) cs.ops.push_back({OpKind::Merge, anchor, frontier, 0});
  }
  if (n >= 2) cs.ops.push_back({OpKind::ResolveNeg, anchor, anchor, 0});
  return cs;
}

std::vector<std::vector<Vertex>> wreach_sets(const Graph& g, const VertexOrder& order, int r) {
  MW_CHECK(r >= 1, "wreach needs r >= 1");
  int n = g.n();
  std::vector<std::vector<Vertex>> wreach(n + 1);
  std::vector<int> dist(n + 1);
  for (Vertex u = 1; u <= n; ++u) {
    // BFS from u through vertices ranked >= u only.
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<Vertex> queue = {u};
    dist[u] = 0;
    size_t head = 0;
    while (head < queue.size()) {
      Vertex x = queue[head++];
      wreach[x].push_back(u);
      if (dist[x] >= r) continue;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] < 0 && order.rank(y) >= order.rank(u)) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  for (auto& set : wreach) std::sort(set.begin(), set.end());
  return wreach;
}

int wcol_value(const Graph& g, const VertexOrder& order, int r) {
  auto sets = wreach_sets(g, order, r);
  size_t best = 0;
  for (Vertex v = 1; v <= g.n(); ++v) best = std::max(best, sets[v].size());
  return static_cast<int>(best);
}

MergeSequence from_wcol_order(const Graph& g, const VertexOrder& order, int r) {
  MW_CHECK(r >= 1, "from_wcol_order needs r >= 1");
  MW_CHECK(order.n() == g.n(), "order size mismatch");
  int n = g.n();
  MergeSequence ms;
  ms.n = n;
  std::vector<PairKey> resolved;  // edges inside L_t, grows with t
  std::vector<uint8_t> in_l(n + 1, 0);
  for (int t = 1; t <= n; ++t) {
    // L_t: the t largest vertices; S_t: the rest.
    Vertex frontier = order.at_rank(n - t + 1);
    in_l[frontier] = 1;
    for (Vertex w : g.neighbors(frontier))
      if (in_l[w]) resolved.push_back(pair_key(frontier, w));
    // Atomic-type classes over S_t, keyed by exact neighborhood traces.
    std::map<std::vector<Vertex>, std::vector<Vertex>> classes;
    for (Vertex v = 1; v <= n; ++v) {
      if (!in_l[v]) continue;
      std::vector<Vertex> trace;
      for (Vertex w : g.neighbors(v))
        if (!in_l[w]) trace.push_back(w);
      classes[trace].push_back(v);
    }
    Partition parts(n);
    for (const auto& [trace, members] : classes)
      for (size_t i = 1; i < members.size(); ++i) parts.merge(members[0], members[i]);
    std::vector<PairKey> cum = resolved;
    std::sort(cum.begin(), cum.end());
    ms.steps.push_back({std::move(parts), std::move(cum)});
  }
  return ms;
}

ContractionSequence read_contraction(std::istream& in, int n) {
  ContractionSequence c;
  Vertex u, v;
  while (in >> u >> v) {
    MW_CHECK(u >= 1 && u <= n && v >= 1 && v <= n, "contraction vertex out of range");
    c.merges.emplace_back(u, v);
  }
  MW_CHECK(static_cast<int>(c.merges.size()) == std::max(0, n - 1),
           "contraction file needs n-1 merges");
  return c;
}

void write_contraction(std::ostream& out, const ContractionSequence& c) {
  for (auto [u, v] : c.merges) out << u << ' ' << v << '\n';
}

namespace {

struct PartCounts {
  // cnt[a][b]: edges between parts with reps a and b (a==b: inside-part edges)
  std::vector<std::vector<int>> cnt;
  std::vector<int> size;
  Partition parts;

  explicit PartCounts(const Graph& g) : parts(g.n()) {
    int n = g.n();
    cnt.assign(n + 1, std::vector<int>(n + 1, 0));
    size.assign(n + 1, 1);
    for (auto [u, v] : g.edges()) {
      cnt[u][v]++;
      cnt[v][u]++;
    }
  }

  bool red(Vertex a, Vertex b) const {
    if (a == b) return false;
    long long full = static_cast<long long>(size[a]) * size[b];
    return cnt[a][b] > 0 && cnt[a][b] < full;
  }

  void merge(Vertex u, Vertex v) {
    Vertex a = parts.rep(u), b = parts.rep(v);
    MW_CHECK(a != b, "contraction merge of same part");
    Vertex keep = std::min(a, b), drop = std::max(a, b);
    for (Vertex c = 1; c <= parts.n(); ++c) {
      if (parts.rep(c) != c || c == keep || c == drop) continue;
      cnt[keep][c] += cnt[drop][c];
      cnt[c][keep] = cnt[keep][c];
    }
    cnt[keep][keep] += cnt[drop][drop] + cnt[keep][drop];
    size[keep] += size[drop];
    parts.merge(keep, drop);
  }

  int max_red_degree() const {
    int best = 0;
    auto reps = parts.reps();
    for (Vertex a : reps) {
      int deg = 0;
      for (Vertex b : reps)
        if (red(a, b)) ++deg;
      best = std::max(best, deg);
    }
    return best;
  }
};

}  // namespace

ContractionSequence greedy_contraction(const Graph& g) {
  int n = g.n();
  MW_CHECK(n <= 128, "greedy contraction is for demo inputs (n <= 128)");
  ContractionSequence out;
  PartCounts pc(g);
  for (int step = 0; step + 1 < n; ++step) {
    auto reps = pc.parts.reps();
    int best_score = n + 1;
    std::pair<Vertex, Vertex> best{0, 0};
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i + 1; j < reps.size(); ++j) {
        PartCounts trial = pc;
        trial.merge(reps[i], reps[j]);
        int score = trial.max_red_degree();
        if (score < best_score) {
          best_score = score;
          best = {reps[i], reps[j]};
        }
      }
    out.merges.push_back(best);
    pc.merge(best.first, best.second);
  }
  return out;
}

ContractionConversion from_contraction(const Graph& g, const ContractionSequence& c) {
  int n = g.n();
  MW_CHECK(static_cast<int>(c.merges.size()) == std::max(0, n - 1),
           "contraction must reach one part");
  ContractionConversion out;
  out.ms.n = n;
  PartCounts pc(g);
  auto push_step = [&]() {
    std::vector<PairKey> resolved;
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v) {
        Vertex a = pc.parts.rep(u), b = pc.parts.rep(v);
        if (a == b || pc.red(a, b)) resolved.push_back(pair_key(u, v));
      }
    std::sort(resolved.begin(), resolved.end());
    out.ms.steps.push_back({pc.parts, std::move(resolved)});
    out.realized_red_degree = std::max(out.realized_red_degree, pc.max_red_degree());
  };
  push_step();
  for (auto [u, v] : c.merges) {
    pc.merge(u, v);
    push_step();
  }
  return out;
}

namespace {

// Next k-combination over indices 0..n-1 in place; false when exhausted.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double choose_approx(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

int subset_value(const Graph& g, const std::vector<Vertex>& s) {
  std::set<uint64_t> traces;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (std::find(s.begin(), s.end(), v) != s.end()) continue;
    uint64_t mask = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if (g.has_edge(v, s[i])) mask |= 1ULL << i;
    traces.insert(mask);
  }
  return static_cast<int>(s.size() + traces.size());
}

}  // namespace

AtomicComplexity atomic_complexity(const Graph& g, int s, uint64_t seed) {
  MW_CHECK(s >= 0, "pi_G needs s >= 0");
  MW_CHECK(s <= 60, "pi_G subset masks limited to s <= 60");
  int n = g.n();
  AtomicComplexity out;
  std::mt19937_64 rng(seed);
  for (int k = 0; k <= std::min(s, n); ++k) {
    if (choose_approx(n, k) <= 1e6) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      bool more = true;
      while (more) {
        std::vector<Vertex> subset(k);
        for (int i = 0; i < k; ++i) subset[i] = idx[i] + 1;
        out.value = std::max(out.value, subset_value(g, subset));
        if (k == 0) break;
        more = next_combination(idx, n);
      }
    } else {
      out.exact = false;
      std::vector<Vertex> pool(n);
      for (int trial = 0; trial < 100000; ++trial) {
        for (int i = 0; i < n; ++i) pool[i] = i + 1;
        for (int i = 0; i < k; ++i) {
          std::uniform_int_distribution<int> pick(i, n - 1);
          std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<Vertex> subset(pool.begin(), pool.begin() + k);
        std::sort(subset.begin(), subset.end());
        out.value = std::max(out.value, subset_value(g, subset));
      }
    }
  }
  return out;
}

NearTwinGap min_near_twin_gap(const Graph& g,
                              const std::optional<std::vector<uint8_t>>& sides) {
  int n = g.n();
  MW_CHECK(n >= 2, "near-twin gap needs at least two vertices");
  if (sides) {
    MW_CHECK(static_cast<int>(sides->size()) == n + 1, "sides vector size mismatch");
    for (auto [u, v] : g.edges())
      MW_CHECK((*sides)[u] != (*sides)[v], "sides not a bipartition");
  }
  NearTwinGap best;
  best.gap = -1;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) {
      if (sides && (*sides)[u] != (*sides)[v]) continue;
      const auto& nu = g.neighbors(u);
      const auto& nv = g.neighbors(v);
      int sym = 0;
      size_t i = 0, j = 0;
      while (i < nu.size() || j < nv.size()) {
        if (j == nv.size() || (i < nu.size() && nu[i] < nv[j])) {
          if (nu[i] != v) ++sym;
          ++i;
        } else if (i == nu.size() || nv[j] < nu[i]) {
          if (nv[j] != u) ++sym;
          ++j;
        } else {
          ++i;
          ++j;
        }
      }
      if (best.gap < 0 || sym < best.gap) best = {sym, u, v};
    }
  MW_CHECK(best.gap >= 0, "no same-side pair exists");
  return best;
}

}  // namespace mw
