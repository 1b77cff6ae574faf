#include "mw/interp.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mw/rho.hpp"

namespace mw {

namespace {

std::pair<std::string, std::string> two_free_vars(const FormulaPtr& phi) {
  auto fv = free_variables(phi);
  MW_CHECK(fv.size() == 2, "interpretation formula needs exactly two free variables");
  std::sort(fv.begin(), fv.end());
  return {fv[0], fv[1]};
}

}  // namespace

Graph interpret_graph(const BinaryStructure& s, const FormulaPtr& phi) {
  auto [x, y] = two_free_vars(phi);
  TypeContext ctx(s);
  Graph out(s.n());
  for (Vertex u = 1; u <= s.n(); ++u)
    for (Vertex v = u + 1; v <= s.n(); ++v) {
      bool edge = evaluate(ctx, phi, {{x, u}, {y, v}}) ||
                  evaluate(ctx, phi, {{x, v}, {y, u}});
      if (edge) out.add_edge(u, v);
    }
  return out;
}

bool interpret_is_symmetric(const BinaryStructure& s, const FormulaPtr& phi) {
  auto [x, y] = two_free_vars(phi);
  TypeContext ctx(s);
  for (Vertex u = 1; u <= s.n(); ++u)
    for (Vertex v = 1; v <= s.n(); ++v)
      if (evaluate(ctx, phi, {{x, u}, {y, v}}) != evaluate(ctx, phi, {{x, v}, {y, u}}))
        return false;
  return true;
}

InterpretationReport derive_merge_sequence(const ConstructionSequence& cs,
                                           const FormulaPtr& phi, const DeriveOptions& opt) {
  MW_CHECK(cs.mode == SeqMode::Structure, "derive_merge_sequence expects structure mode");
  int q = quantifier_rank(phi);
  int n = cs.structure.n();
  MW_CHECK(q <= 1 || n <= 16, "q >= 2 interpretation is guarded to n <= 16");
  InterpretationReport report;
  report.interpreted = interpret_graph(cs.structure, phi);
  report.symmetric = interpret_is_symmetric(cs.structure, phi);

  auto states = replay_structure(cs);
  int rho_eff = rho_clamped(2, q, n);
  MergeSequence ms;
  ms.n = n;
  std::vector<std::vector<LtpId>> ltps_per_step;
  for (const auto& state : states) {
    TypeContext ctx(state);
    std::vector<LtpId> ltps(n + 1);
    Partition parts(n);
    std::map<LtpId, Vertex> first;
    for (Vertex v = 1; v <= n; ++v) {
      ltps[v] = compute_ltp(ctx, {v}, 2, q);
      auto [it, inserted] = first.emplace(ltps[v], v);
      if (!inserted) parts.merge(it->second, v);
    }
    std::vector<PairKey> resolved;
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v)
        if (ctx.dist(u, v) <= rho_eff) resolved.push_back(pair_key(u, v));
    std::sort(resolved.begin(), resolved.end());
    report.part_counts.push_back(parts.part_count());
    ms.steps.push_back({std::move(parts), std::move(resolved)});
    ltps_per_step.push_back(std::move(ltps));
  }
  report.final_type_count = report.part_counts.back();
  // Appended final step: the single part with every pair resolved.
  {
    Partition one(n);
    for (Vertex v = 2; v <= n; ++v)
      if (one.rep(v) != one.rep(1)) one.merge(1, v);
    std::vector<PairKey> all;
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v) all.push_back(pair_key(u, v));
    std::sort(all.begin(), all.end());
    ms.steps.push_back({std::move(one), std::move(all)});
  }
  report.derived = std::move(ms);
  report.verdict = validate_merge(report.derived, report.interpreted);
  if (!report.verdict.ok) {
    report.failed_claim = report.verdict.error.find("homogeneity") != std::string::npos
                              ? "default-connection claim: " + report.verdict.error
                              : "coarsening claim: " + report.verdict.error;
    return report;
  }
  for (int r : opt.radii) report.widths[r] = width_of_merge(report.derived, r);

  // Default-connection spot check: equal local-type keys of far pairs agree
  // on the interpreted edge.
  std::mt19937_64 rng(opt.seed);
  std::map<std::tuple<size_t, LtpId, LtpId>, bool> table;
  for (size_t t = 0; t < states.size(); ++t) {
    const auto& step = report.derived.steps[t];
    std::vector<std::pair<Vertex, Vertex>> off;
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v)
        if (!std::binary_search(step.resolved.begin(), step.resolved.end(), pair_key(u, v)))
          off.emplace_back(u, v);
    if (!opt.full_check && static_cast<int>(off.size()) > opt.sample_pairs_per_step) {
      std::shuffle(off.begin(), off.end(), rng);
      off.resize(opt.sample_pairs_per_step);
    }
    for (auto [u, v] : off) {
      auto key = std::make_tuple(t, std::min(ltps_per_step[t][u], ltps_per_step[t][v]),
                                 std::max(ltps_per_step[t][u], ltps_per_step[t][v]));
      bool edge = report.interpreted.has_edge(u, v);
      auto [it, inserted] = table.emplace(key, edge);
      ++report.checked_pairs;
      if (!inserted && it->second != edge) {
        report.failed_claim = "default-connection claim: local-type pair at step " +
                              std::to_string(t + 1) + " is not edge-uniform";
        return report;
      }
    }
  }
  return report;
}

}  // namespace mw
