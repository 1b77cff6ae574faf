#include "mw/modelcheck.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include "mw/bfs.hpp"
#include "mw/rho.hpp"

namespace mw {

namespace {

// Renames the merged-away part predicate inside stored types: reach names
// substitute drop -> keep, distances to keep become the min of the two,
// recursively through the extension tower.
class MergeRewriter {
 public:
  MergeRewriter(PredId keep, PredId drop) : keep_(keep), drop_(drop) {}

  LtpId ltp(LtpId l) {
    auto& lt = LtpTable::instance();
    return lt.intern(mask(lt.reach(l)), type(lt.inner(l)));
  }

  TypeId type(TypeId t) {
    if (auto it = tmemo_.find(t); it != tmemo_.end()) return it->second;
    const TypeNode& n = TypeTable::instance().node(t);
    TypeNode out;
    out.k = n.k;
    out.q = n.q;
    out.atom = atom(n.atom);
    out.children.reserve(n.children.size());
    for (TypeId c : n.children) out.children.push_back(type(c));
    std::sort(out.children.begin(), out.children.end());
    out.children.erase(std::unique(out.children.begin(), out.children.end()),
                       out.children.end());
    TypeId id = TypeTable::instance().intern(std::move(out));
    tmemo_.emplace(t, id);
    return id;
  }

  MaskId mask(MaskId m) {
    if (auto it = mmemo_.find(m); it != mmemo_.end()) return it->second;
    std::vector<PredId> preds = MaskTable::instance().preds(m);
    bool had_drop = false;
    for (PredId& p : preds)
      if (p == drop_) {
        p = keep_;
        had_drop = true;
      }
    if (had_drop) {
      std::sort(preds.begin(), preds.end());
      preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    }
    MaskId id = MaskTable::instance().intern(std::move(preds));
    mmemo_.emplace(m, id);
    return id;
  }

 private:
  AtomId atom(AtomId a) {
    if (auto it = amemo_.find(a); it != amemo_.end()) return it->second;
    AtomRecord rec = AtomTable::instance().record(a);
    for (auto& entries : rec.unary) {
      int keep_d = -1, drop_d = -1;
      for (auto& [p, d] : entries) {
        if (p == keep_) keep_d = d;
        if (p == drop_) drop_d = d;
      }
      if (drop_d >= 0) {
        int merged = keep_d < 0 ? drop_d : std::min(keep_d, drop_d);
        std::vector<std::pair<PredId, int32_t>> next;
        bool placed = false;
        for (auto& [p, d] : entries) {
          if (p == drop_) continue;
          if (p == keep_) {
            next.emplace_back(keep_, merged);
            placed = true;
          } else {
            next.emplace_back(p, d);
          }
        }
        if (!placed) {
          next.emplace_back(keep_, merged);
          std::sort(next.begin(), next.end());
        }
        entries = std::move(next);
      }
    }
    AtomId id = AtomTable::instance().intern(std::move(rec));
    amemo_.emplace(a, id);
    return id;
  }

  PredId keep_, drop_;
  std::map<TypeId, TypeId> tmemo_;
  std::map<AtomId, AtomId> amemo_;
  std::map<MaskId, MaskId> mmemo_;
};

bool mask_subset(MaskId small, MaskId big) {
  const auto& a = MaskTable::instance().preds(small);
  const auto& b = MaskTable::instance().preds(big);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

MaskId mask_union(MaskId a, MaskId b) {
  const auto& pa = MaskTable::instance().preds(a);
  const auto& pb = MaskTable::instance().preds(b);
  std::vector<PredId> out;
  std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(out));
  return MaskTable::instance().intern(std::move(out));
}

MaskId mask_intersect(MaskId a, MaskId b) {
  const auto& pa = MaskTable::instance().preds(a);
  const auto& pb = MaskTable::instance().preds(b);
  std::vector<PredId> out;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(out));
  return MaskTable::instance().intern(std::move(out));
}

}  // namespace

ModelChecker::ModelChecker(const BinaryStructure& subject, int q, WitnessCache& cache,
                           MCOptions opt)
    : cur_(initial_structure(subject)), q_(q), cache_(cache), opt_(opt) {
  init_types();
}

ModelChecker::ModelChecker(PartitionedStructure s0, int q, WitnessCache& cache, MCOptions opt)
    : cur_(std::move(s0)), q_(q), cache_(cache), opt_(opt) {
  for (PredId rel : cur_.base.binary_names())
    MW_CHECK(cur_.base.pair_count(rel) == 0, "s0 not initial: relation " + pred_name(rel) +
                                                 " is nonempty");
  MW_CHECK(cur_.parts.part_count() == cur_.n(), "s0 not initial: parts must be singletons");
  init_types();
}

TypeContext& ModelChecker::ctx() {
  if (!ctx_) ctx_ = std::make_unique<TypeContext>(cur_);
  return *ctx_;
}

void ModelChecker::init_types() {
  MW_CHECK(q_ >= 0, "q must be nonnegative");
  ltp_.assign(cur_.n() + 1, 0);
  auto& c = ctx();
  for (Vertex v = 1; v <= cur_.n(); ++v) ltp_[v] = compute_ltp(c, {v}, 1, q_);
}

void ModelChecker::verify_ltps(const char* where) {
  auto& c = ctx();
  for (Vertex v = 1; v <= cur_.n(); ++v) {
    LtpId direct = compute_ltp(c, {v}, 1, q_);
    if (direct != ltp_[v]) {
      std::string msg = std::string("stored ltp differs from direct recomputation after ") +
                        where + " at vertex " + std::to_string(v) + " (step " +
                        std::to_string(step_no_) + ")";
      if (opt_.policy == ViolationPolicy::Throw) throw LocalityViolation(msg);
      if (opt_.log) *opt_.log << msg << '\n';
      ltp_[v] = direct;
    }
  }
}

void ModelChecker::step(const ConstructionOp& op) {
  auto start = std::chrono::steady_clock::now();
  ++step_no_;
  switch (op.kind) {
    case OpKind::Merge:
      step_merge(op.u, op.v);
      break;
    case OpKind::ResolveRel:
      step_resolve(op.rel, op.u, op.v);
      break;
    default:
      throw Error("model checker runs structure-mode sequences (res+/res- must be lifted)");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stats_.total_seconds += secs;
  if (opt_.collect_timings) stats_.step_seconds.push_back(secs);
}

void ModelChecker::step_merge(Vertex u, Vertex v) {
  ++stats_.merges;
  Vertex p = cur_.parts.rep(u), q = cur_.parts.rep(v);
  merge_inplace(cur_, p, q);
  ctx_.reset();
  Vertex keep = std::min(p, q), drop = std::max(p, q);
  PredId keep_pred = part_pred(keep), drop_pred = part_pred(drop);
  MergeRewriter rw(keep_pred, drop_pred);
  // The rename/min rewrite is exact only when the reach set sees both parts
  // or neither: with exactly one in reach, the other part's content is
  // invisible to the stored record and the type is recomputed.
  std::map<LtpId, std::vector<Vertex>> classes;
  for (Vertex w = 1; w <= cur_.n(); ++w) classes[ltp_[w]].push_back(w);
  stats_.ltp_classes_max = std::max(stats_.ltp_classes_max, classes.size());
  for (auto& [old_ltp, members] : classes) {
    const auto& reach = MaskTable::instance().preds(LtpTable::instance().reach(old_ltp));
    bool has_keep = std::binary_search(reach.begin(), reach.end(), keep_pred);
    bool has_drop = std::binary_search(reach.begin(), reach.end(), drop_pred);
    LtpId next;
    if (has_keep == has_drop)
      next = rw.ltp(old_ltp);
    else
      next = compute_ltp(ctx(), {members.front()}, 1, q_);
    for (Vertex w : members) ltp_[w] = next;
  }
  if (opt_.verify) verify_ltps("merge");
}

void ModelChecker::step_resolve(PredId rel, Vertex u, Vertex v) {
  int n = cur_.n();
  Vertex p = cur_.parts.rep(u), q = cur_.parts.rep(v);
  auto pm = cur_.parts.members(p);
  auto qm = cur_.parts.members(q);
  if (pm.empty() || qm.empty()) {
    ++stats_.noop_resolves;
    if (opt_.log) *opt_.log << "resolve with an empty part is a no-op (step "
                            << step_no_ << ")\n";
    return;
  }
  ++stats_.resolves;
  int r = rho_clamped(1, q_, n);
  // Near/far split by pre-resolve distance to the union of both parts.
  std::vector<Vertex> sources = pm;
  sources.insert(sources.end(), qm.begin(), qm.end());
  auto old_dist = bfs_distances(ctx().adjacency(), sources, r);
  resolve_inplace(cur_, rel, p, q);
  ctx_.reset();
  auto& c = ctx();
  // sigma*: predicates within 2r of witnesses of both parts, post-resolve.
  MaskId sigma = mask_union(c.reach_mask({pm.front()}, 2 * r),
                            c.reach_mask({qm.front()}, 2 * r));
  std::map<LtpId, std::vector<Vertex>> classes;
  for (Vertex w = 1; w <= n; ++w) classes[ltp_[w]].push_back(w);
  stats_.ltp_classes_max = std::max(stats_.ltp_classes_max, classes.size());
  // Scatter type of the sigma*-reduct, from per-class (2,q-1) types.
  StpId stp;
  {
    std::vector<TypeId> next(n + 1, 0);
    if (q_ >= 1) {
      for (auto& [old_ltp, members] : classes) {
        TypeId t2 = compute_tp(c, sigma, {members.front()}, 2, q_ - 1);
        for (Vertex w : members) next[w] = t2;
      }
    }
    stp = compute_stp(c, 1, q_, next);
  }
  bool truncated = StpTable::instance().record(stp).truncated;
  auto& lt = LtpTable::instance();
  for (auto& [old_ltp, members] : classes) {
    Vertex w = members.front();
    MaskId mask_w = c.reach_mask({w}, r);
    bool near = old_dist[w] < r || old_dist[w] <= 0;
    LtpId new_ltp;
    if (near && mask_subset(mask_w, sigma) && !truncated) {
      // ltp in the sigma*-reduct keys the cache; its restriction to the
      // reach set is the stored value.
      TypeId inner_star = compute_tp(c, mask_intersect(mask_w, sigma), {w}, 1, q_);
      LtpId key = lt.intern(mask_w, inner_star);
      TypeId tp_star;
      if (auto hit = cache_.lookup(key, stp)) {
        tp_star = *hit;
        if (opt_.verify) {
          TypeId direct = compute_tp(c, sigma, {w}, 1, q_);
          if (direct != tp_star) {
            ++cache_.stats().violations;
            std::string msg = "locality violation in resolve step " +
                              std::to_string(step_no_) + " at vertex " + std::to_string(w);
            if (opt_.policy == ViolationPolicy::Throw) throw LocalityViolation(msg);
            if (opt_.log) *opt_.log << msg << '\n';
            tp_star = direct;
          }
        }
      } else {
        tp_star = compute_tp(c, sigma, {w}, 1, q_);
        cache_.store(key, stp, tp_star, "step" + std::to_string(step_no_) + "#" +
                                            std::to_string(w));
      }
      new_ltp = lt.intern(mask_w, restrict_type(tp_star, mask_w));
    } else {
      // Far vertices keep their reach set; the type is recomputed in that
      // reduct on the new structure.
      new_ltp = lt.intern(mask_w, compute_tp(c, mask_w, {w}, 1, q_));
    }
    for (Vertex x : members) ltp_[x] = new_ltp;
  }
  if (opt_.verify) verify_ltps("resolve");
}

std::vector<TypeId> ModelChecker::current_types() {
  L2GOptions opt;
  opt.verify = opt_.verify;
  opt.policy = opt_.policy;
  opt.log = opt_.log;
  opt.source = "final-step" + std::to_string(step_no_);
  return local_to_global_all(ctx(), ltp_, 1, q_, cache_, opt);
}

std::vector<Vertex> run_defining_set(const ConstructionSequence& cs, const FormulaPtr& phi,
                                     WitnessCache& cache, const MCOptions& opt,
                                     MCStats* stats_out) {
  MW_CHECK(cs.mode == SeqMode::Structure, "run expects a structure-mode sequence");
  auto fv = free_variables(phi);
  MW_CHECK(fv.size() <= 1, "run handles formulas with at most one free variable");
  int q = quantifier_rank(phi);
  MW_CHECK(distance_rank_ok(phi, 1, q), "formula exceeds the distance-rank budget (1,q)");
  ModelChecker mc(cs.structure, q, cache, opt);
  for (const auto& op : cs.ops) mc.step(op);
  auto types = mc.current_types();
  std::map<std::string, int> env;
  if (!fv.empty()) env[fv[0]] = 0;
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= cs.structure.n(); ++v)
    if (formula_in_type(phi, types[v], env)) out.push_back(v);
  if (stats_out) *stats_out = mc.stats();
  return out;
}

bool model_check_sentence(const Graph& g, const ConstructionSequence& cs,
                          const FormulaPtr& sentence, WitnessCache& cache,
                          const MCOptions& opt, MCStats* stats_out) {
  return model_check_sentences(g, cs, {sentence}, cache, opt, stats_out).at(0);
}

std::vector<bool> model_check_sentences(const Graph& g, const ConstructionSequence& cs,
                                        const std::vector<FormulaPtr>& sentences,
                                        WitnessCache& cache, const MCOptions& opt,
                                        MCStats* stats_out) {
  MW_CHECK(cs.mode == SeqMode::Graph, "model_check_sentences expects a graph-mode sequence");
  MW_CHECK(g.n() >= 1, "model checking needs a nonempty graph");
  int q = 0;
  for (const auto& sentence : sentences) {
    MW_CHECK(free_variables(sentence).empty(), "sentence must have no free variables");
    MW_CHECK(is_plain_fo(sentence),
             "graph-mode model checking takes plain FO sentences (no distance atoms)");
    q = std::max(q, quantifier_rank(sentence));
  }
  auto report = validate_construction(cs, {.homogeneity_diagnostics = false});
  if (!report.ok) throw Error("invalid construction sequence: " + report.error);
  auto lifted = lift_to_structure(normalize_effective(cs));
  ModelChecker mc(lifted.structure, q, cache, opt);
  for (const auto& op : lifted.ops) mc.step(op);
  auto types = mc.current_types();
  std::vector<bool> out;
  out.reserve(sentences.size());
  // A rank-q type decides every sentence of rank <= q.
  for (const auto& sentence : sentences)
    out.push_back(formula_in_type(sentence, types[1], {}));
  if (stats_out) *stats_out = mc.stats();
  return out;
}

bool naive_evaluate(const BinaryStructure& s, const FormulaPtr& sentence) {
  MW_CHECK(free_variables(sentence).empty(), "sentence must have no free variables");
  double cost = 1;
  for (int i = 0; i < quantifier_rank(sentence); ++i) cost *= std::max(1, s.n());
  MW_CHECK(cost <= 1e9, "naive evaluation guard exceeded (n^q > 1e9)");
  TypeContext ctx(s);
  return evaluate(ctx, sentence, {});
}

std::vector<Vertex> naive_defining_set(const BinaryStructure& s, const FormulaPtr& phi) {
  auto fv = free_variables(phi);
  MW_CHECK(fv.size() <= 1, "naive defining set takes at most one free variable");
  double cost = std::max(1, s.n());
  for (int i = 0; i < quantifier_rank(phi); ++i) cost *= std::max(1, s.n());
  MW_CHECK(cost <= 1e9, "naive evaluation guard exceeded");
  TypeContext ctx(s);
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= s.n(); ++v) {
    std::map<std::string, Vertex> asg;
    if (!fv.empty()) asg[fv[0]] = v;
    if (evaluate(ctx, phi, asg)) out.push_back(v);
  }
  return out;
}

FormulaPtr rewrite_distance_atom(TypeContext& pre, const PartitionedStructure& s,
                                 Vertex p_rep, Vertex q_rep, const FormulaPtr& atom) {
  PredId alpha = part_pred(s.parts.rep(p_rep));
  PredId beta = part_pred(s.parts.rep(q_rep));
  bool alpha_nonempty = !s.parts.members(part_pred_rep(alpha)).empty();
  bool beta_nonempty = !s.parts.members(part_pred_rep(beta)).empty();
  if (atom->kind == FKind::DistLE) {
    // New paths cross the alpha-beta bridge once (cost 1) or relay through
    // the far side and come back (cost 2); anything longer is dominated.
    long long r = atom->radius;
    FormulaPtr out = atom;
    for (long long r1 = 0; r1 + 1 <= r; ++r1) {
      long long r2 = r - 1 - r1;
      out = Formula::disj(std::move(out),
                          Formula::conj(Formula::dist_lt(atom->var1, alpha, r1 + 1),
                                        Formula::dist_lt(atom->var2, beta, r2 + 1)));
      out = Formula::disj(std::move(out),
                          Formula::conj(Formula::dist_lt(atom->var1, beta, r1 + 1),
                                        Formula::dist_lt(atom->var2, alpha, r2 + 1)));
    }
    for (long long r1 = 0; r1 + 2 <= r; ++r1) {
      long long r2 = r - 2 - r1;
      if (beta_nonempty)
        out = Formula::disj(std::move(out),
                            Formula::conj(Formula::dist_lt(atom->var1, alpha, r1 + 1),
                                          Formula::dist_lt(atom->var2, alpha, r2 + 1)));
      if (alpha_nonempty)
        out = Formula::disj(std::move(out),
                            Formula::conj(Formula::dist_lt(atom->var1, beta, r1 + 1),
                                          Formula::dist_lt(atom->var2, beta, r2 + 1)));
    }
    return out;
  }
  if (atom->kind == FKind::DistLT) {
    long long r = atom->radius;
    // Pre-resolve distances from each side to the target predicate.
    auto side_dist = [&](PredId part) {
      int best = pre.n() + 1;
      for (Vertex m : s.parts.members(part_pred_rep(part)))
        best = std::min(best, pre.pred_dist(atom->pred, m));
      return best;
    };
    int d_alpha = side_dist(alpha);
    int d_beta = side_dist(beta);
    FormulaPtr out = atom;
    auto add_branch = [&](PredId entry, long long radius) {
      if (radius >= 1) out = Formula::disj(std::move(out),
                                           Formula::dist_lt(atom->var1, entry, radius));
    };
    if (d_beta <= pre.n()) add_branch(alpha, r - 1 - d_beta);
    if (d_alpha <= pre.n()) add_branch(beta, r - 1 - d_alpha);
    if (d_alpha <= pre.n() && beta_nonempty) add_branch(alpha, r - 2 - d_alpha);
    if (d_beta <= pre.n() && alpha_nonempty) add_branch(beta, r - 2 - d_beta);
    return out;
  }
  throw Error("rewrite_distance_atom takes a distance atom");
}

}  // namespace mw
