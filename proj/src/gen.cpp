#include "mw/gen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mw/rho.hpp"

namespace mw::gen {

Graph path(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle(int n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(1, n);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int v = 2; v <= leaves + 1; ++v) g.add_edge(1, v);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 1; u <= a; ++u)
    for (int v = a + 1; v <= a + b; ++v) g.add_edge(u, v);
  return g;
}

Graph gnm(int n, int m, uint64_t seed) {
  MW_CHECK(static_cast<long long>(m) <= static_cast<long long>(n) * (n - 1) / 2,
           "too many edges");
  std::mt19937_64 rng(seed);
  Graph g(n);
  std::set<PairKey> used;
  std::uniform_int_distribution<int> pick(1, n);
  while (static_cast<int>(used.size()) < m) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (used.insert(pair_key(u, v)).second) g.add_edge(u, v);
  }
  return g;
}

Graph gnp(int n, double p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

Graph tree(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    g.add_edge(v, pick(rng));
  }
  return g;
}

Graph d_degenerate(int n, int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int v = 2; v <= n; ++v) {
    int k = std::min(d, v - 1);
    std::set<int> chosen;
    std::uniform_int_distribution<int> pick(1, v - 1);
    while (static_cast<int>(chosen.size()) < k) chosen.insert(pick(rng));
    for (int u : chosen) g.add_edge(v, u);
  }
  return g;
}

Graph d_out(int n, int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  std::uniform_int_distribution<int> pick(1, n);
  for (int v = 1; v <= n; ++v) {
    int placed = 0, guard = 0;
    while (placed < d && guard++ < 100 * d) {
      int u = pick(rng);
      if (u == v || g.has_edge(u, v)) continue;
      g.add_edge(u, v);
      ++placed;
    }
  }
  return g;
}

Graph regular(int n, int d, uint64_t seed) {
  MW_CHECK(n * d % 2 == 0 && d < n, "no d-regular graph on n vertices");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 1; v <= n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<PairKey> used;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v || !used.insert(pair_key(u, v)).second) ok = false;
    }
    if (!ok) continue;
    Graph g(n);
    for (auto p : used) g.add_edge(pair_lo(p), pair_hi(p));
    return g;
  }
  throw Error("pairing model failed to produce a simple regular graph");
}

Graph bipartite(int a, int b, double p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(a + b);
  for (int u = 1; u <= a; ++u)
    for (int v = a + 1; v <= a + b; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

BinaryStructure structure(int n, int unary, int binary, double density, uint64_t seed,
                          int components) {
  MW_CHECK(components >= 1, "components >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  BinaryStructure s(n);
  std::vector<int> block(n + 1);
  for (int v = 1; v <= n; ++v) block[v] = (v - 1) % components;
  for (int i = 1; i <= unary; ++i) {
    PredId id = intern_name("U" + std::to_string(i));
    s.add_unary(id);
    for (int v = 1; v <= n; ++v)
      if (coin(rng) < 0.4) s.set_unary(id, v, true);
  }
  for (int i = 1; i <= binary; ++i) {
    PredId id = intern_name(i == 1 ? "E" : "R" + std::to_string(i));
    s.add_binary(id);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) {
        if (u == v || block[u] != block[v]) continue;
        if (coin(rng) < density) s.add_pair(id, u, v);
      }
  }
  return s;
}

namespace {

FormulaPtr gen_formula(std::mt19937_64& rng, const FormulaSignature& sig,
                       std::vector<std::string>& scope, int k, int q, int max_radius,
                       int depth) {
  auto pick_var = [&]() -> std::string {
    std::uniform_int_distribution<size_t> d(0, scope.size() - 1);
    return scope[d(rng)];
  };
  auto radius = [&](bool unary_atom) {
    int cap = rho_clamped(k, q, max_radius);
    if (unary_atom && cap < 1) cap = 1;
    std::uniform_int_distribution<int> d(unary_atom ? 1 : 0, std::max(cap, 1));
    return d(rng);
  };
  std::uniform_int_distribution<int> roll(0, 99);
  int r = roll(rng);
  bool need_var = scope.empty();
  if (need_var || (q > 0 && depth > 0 && r < 30)) {
    MW_CHECK(q > 0, "sentence generation needs quantifiers in budget");
    std::string var = "x" + std::to_string(k + 1);
    scope.push_back(var);
    FormulaPtr body = gen_formula(rng, sig, scope, k + 1, q - 1, max_radius, depth - 1);
    scope.pop_back();
    return roll(rng) < 50 ? Formula::exists(var, std::move(body))
                          : Formula::forall(var, std::move(body));
  }
  if (depth > 0 && r < 55)
    switch (roll(rng) % 4) {
      case 0:
        return Formula::negate(gen_formula(rng, sig, scope, k, q, max_radius, depth - 1));
      case 1:
        return Formula::conj(gen_formula(rng, sig, scope, k, q, max_radius, depth - 1),
                             gen_formula(rng, sig, scope, k, q, max_radius, depth - 1));
      case 2:
        return Formula::disj(gen_formula(rng, sig, scope, k, q, max_radius, depth - 1),
                             gen_formula(rng, sig, scope, k, q, max_radius, depth - 1));
      default:
        return Formula::implies(gen_formula(rng, sig, scope, k, q, max_radius, depth - 1),
                                gen_formula(rng, sig, scope, k, q, max_radius, depth - 1));
    }
  // atoms
  int choices = 2 + (sig.binary.empty() ? 0 : 1) + (sig.unary.empty() ? 0 : 2);
  std::uniform_int_distribution<int> pickd(0, choices - 1);
  int c = pickd(rng);
  if (c == 0) return Formula::eq(pick_var(), pick_var());
  if (c == 1) return Formula::dist_le(pick_var(), pick_var(), radius(false));
  if (!sig.binary.empty() && c == 2) {
    std::uniform_int_distribution<size_t> d(0, sig.binary.size() - 1);
    return Formula::binary_atom(sig.binary[d(rng)], pick_var(), pick_var());
  }
  std::uniform_int_distribution<size_t> d(0, sig.unary.size() - 1);
  PredId u = sig.unary[d(rng)];
  if (c % 2 == 0) return Formula::unary_atom(u, pick_var());
  return Formula::dist_lt(pick_var(), u, radius(true));
}

}  // namespace

FormulaPtr random_formula(const FormulaSignature& sig, int k, int q, int max_radius,
                          uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> scope;
  for (int i = 1; i <= k; ++i) scope.push_back("x" + std::to_string(i));
  return gen_formula(rng, sig, scope, k, q, max_radius, 4);
}

}  // namespace mw::gen
