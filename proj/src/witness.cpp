#include "mw/witness.hpp"

#include <ostream>

namespace mw {

std::optional<TypeId> WitnessCache::lookup(LtpId ltp, StpId stp) {
  ++stats_.lookups;
  auto it = map_.find({ltp, stp});
  if (it == map_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  ++stats_.hits;
  return it->second.first;
}

void WitnessCache::store(LtpId ltp, StpId stp, TypeId tp, std::string witness) {
  map_.emplace(std::make_pair(ltp, stp), std::make_pair(tp, std::move(witness)));
}

const std::string& WitnessCache::witness(LtpId ltp, StpId stp) const {
  static const std::string none = "";
  auto it = map_.find({ltp, stp});
  return it == map_.end() ? none : it->second.second;
}

namespace {

StpId stp_for(TypeContext& ctx, const std::vector<LtpId>& ltps, int k, int q,
              WitnessCache& cache, const L2GOptions& opt) {
  if (q == 0) return compute_stp(ctx, k, 0, {});
  // tp at (k+1,q-1) for every vertex, via the shifted local types.
  std::vector<LtpId> next(ctx.n() + 1, 0);
  for (Vertex v = 1; v <= ctx.n(); ++v) next[v] = shift_ltp(ltps[v]);
  auto next_types = local_to_global_all(ctx, next, k + 1, q - 1, cache, opt);
  return compute_stp(ctx, k, q, next_types);
}

}  // namespace

StpId scatter_type_of(TypeContext& ctx, const std::vector<LtpId>& ltps, int k, int q,
                      WitnessCache& cache, const L2GOptions& opt) {
  return stp_for(ctx, ltps, k, q, cache, opt);
}

std::vector<TypeId> local_to_global_all(TypeContext& ctx, const std::vector<LtpId>& ltps,
                                        int k, int q, WitnessCache& cache,
                                        const L2GOptions& opt) {
  MW_CHECK(k >= 1, "local_to_global_all needs k >= 1");
  MW_CHECK(static_cast<int>(ltps.size()) == ctx.n() + 1, "ltps must be indexed 1..n");
  StpId stp = stp_for(ctx, ltps, k, q, cache, opt);
  bool truncated = StpTable::instance().record(stp).truncated;
  MaskId full = ctx.full_mask();
  std::vector<TypeId> out(ctx.n() + 1, 0);
  // Equal keys get equal answers within one structure, so compute per class.
  std::map<LtpId, TypeId> per_class;
  for (Vertex v = 1; v <= ctx.n(); ++v) {
    LtpId ltp = ltps[v];
    if (auto it = per_class.find(ltp); it != per_class.end() && !opt.verify) {
      out[v] = it->second;
      continue;
    }
    TypeId tp;
    if (truncated) {
      ++cache.stats().bypasses;
      tp = compute_tp(ctx, full, {v}, k, q);
    } else if (auto hit = cache.lookup(ltp, stp)) {
      tp = *hit;
      if (opt.verify) {
        TypeId direct = compute_tp(ctx, full, {v}, k, q);
        if (direct != tp) {
          ++cache.stats().violations;
          std::string msg =
              "locality violation: cached tp for (ltp,stp) key disagrees with direct "
              "computation (witness " +
              cache.witness(ltp, stp) + ", now " + opt.source + "#" + std::to_string(v) +
              ")";
          if (opt.policy == ViolationPolicy::Throw) throw LocalityViolation(msg);
          if (opt.log) *opt.log << msg << '\n';
          tp = direct;
        }
      }
    } else {
      tp = compute_tp(ctx, full, {v}, k, q);
      cache.store(ltp, stp, tp, opt.source + "#" + std::to_string(v));
    }
    if (opt.verify) {
      // Easy direction of locality: the local type is the reduct projection
      // of the global type.
      MaskId reach = LtpTable::instance().reach(ltp);
      TypeId projected = restrict_type(tp, reach);
      if (projected != LtpTable::instance().inner(ltp)) {
        std::string msg = "locality violation: tp does not project onto ltp at " +
                          opt.source + "#" + std::to_string(v);
        if (opt.policy == ViolationPolicy::Throw) throw LocalityViolation(msg);
        if (opt.log) *opt.log << msg << '\n';
      }
    }
    per_class[ltp] = tp;
    out[v] = tp;
  }
  return out;
}

}  // namespace mw
