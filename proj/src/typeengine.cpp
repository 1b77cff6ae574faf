#include "mw/typeengine.hpp"

#include <algorithm>

#include "mw/bfs.hpp"

namespace mw {

MaskTable& MaskTable::instance() {
  static MaskTable t;
  return t;
}

MaskId MaskTable::intern(std::vector<PredId> sorted_preds) {
  auto it = index_.find(sorted_preds);
  if (it != index_.end()) return it->second;
  MaskId id = static_cast<MaskId>(sets_.size());
  index_.emplace(sorted_preds, id);
  sets_.push_back(std::move(sorted_preds));
  return id;
}

const std::vector<PredId>& MaskTable::preds(MaskId id) const { return sets_[id]; }

bool AtomRecord::operator==(const AtomRecord& o) const {
  return k == o.k && q == o.q && len == o.len && unary == o.unary &&
         self_rel == o.self_rel && eq == o.eq && pair_dist == o.pair_dist && rels == o.rels;
}

namespace {

uint64_t hash_atom(const AtomRecord& r) {
  uint64_t h = hash_mix(r.k, hash_mix(r.q, r.len));
  for (const auto& u : r.unary) {
    h = hash_mix(h, u.size());
    for (auto [p, d] : u) h = hash_mix(h, (static_cast<uint64_t>(p) << 20) ^ d);
  }
  for (const auto& s : r.self_rel)
    for (PredId p : s) h = hash_mix(h, 0x5e1f ^ p);
  for (uint8_t e : r.eq) h = hash_mix(h, e + 2);
  for (int32_t d : r.pair_dist) h = hash_mix(h, d + 7);
  for (const auto& rr : r.rels)
    for (auto [p, m] : rr) h = hash_mix(h, (static_cast<uint64_t>(p) << 8) ^ m);
  return h;
}

uint64_t hash_type(const TypeNode& n) {
  uint64_t h = hash_mix(n.k, hash_mix(n.q, n.atom));
  for (TypeId c : n.children) h = hash_mix(h, c);
  return h;
}

uint64_t hash_stp(const StpRecord& r) {
  uint64_t h = hash_mix(r.k, hash_mix(r.q, r.truncated));
  for (const auto& e : r.entries) {
    for (TypeId t : e.class_key) h = hash_mix(h, t);
    for (auto [a, b] : e.fn) h = hash_mix(h, (static_cast<uint64_t>(a) << 16) ^ b);
    h = hash_mix(h, 0x9177);
  }
  return h;
}

}  // namespace

AtomTable& AtomTable::instance() {
  static AtomTable t;
  return t;
}

AtomId AtomTable::intern(AtomRecord rec) {
  uint64_t h = hash_atom(rec);
  auto& bucket = index_[h];
  for (AtomId id : bucket)
    if (records_[id] == rec) return id;
  AtomId id = static_cast<AtomId>(records_.size());
  records_.push_back(std::move(rec));
  bucket.push_back(id);
  return id;
}

const AtomRecord& AtomTable::record(AtomId id) const { return records_[id]; }

TypeTable& TypeTable::instance() {
  static TypeTable t;
  return t;
}

TypeId TypeTable::intern(TypeNode node) {
  uint64_t h = hash_type(node);
  auto& bucket = index_[h];
  for (TypeId id : bucket) {
    const TypeNode& n = nodes_[id];
    if (n.k == node.k && n.q == node.q && n.atom == node.atom && n.children == node.children)
      return id;
  }
  TypeId id = static_cast<TypeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  bucket.push_back(id);
  return id;
}

const TypeNode& TypeTable::node(TypeId id) const { return nodes_[id]; }

LtpTable& LtpTable::instance() {
  static LtpTable t;
  return t;
}

LtpId LtpTable::intern(MaskId reach, TypeId inner) {
  auto key = std::make_pair(reach, inner);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  LtpId id = static_cast<LtpId>(entries_.size());
  entries_.push_back(key);
  index_.emplace(key, id);
  return id;
}

MaskId LtpTable::reach(LtpId id) const { return entries_[id].first; }
TypeId LtpTable::inner(LtpId id) const { return entries_[id].second; }

bool StpRecord::operator==(const StpRecord& o) const {
  if (k != o.k || q != o.q || truncated != o.truncated ||
      entries.size() != o.entries.size())
    return false;
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].class_key != o.entries[i].class_key || entries[i].fn != o.entries[i].fn)
      return false;
  return true;
}

StpTable& StpTable::instance() {
  static StpTable t;
  return t;
}

StpId StpTable::intern(StpRecord rec) {
  uint64_t h = hash_stp(rec);
  auto& bucket = index_[h];
  for (StpId id : bucket)
    if (records_[id] == rec) return id;
  StpId id = static_cast<StpId>(records_.size());
  records_.push_back(std::move(rec));
  bucket.push_back(id);
  return id;
}

const StpRecord& StpTable::record(StpId id) const { return records_[id]; }

namespace {
uint64_t next_ctx_version() {
  static uint64_t v = 0;
  return ++v;
}
}  // namespace

TypeContext::TypeContext(const BinaryStructure& s) { init(s, nullptr); }

TypeContext::TypeContext(const PartitionedStructure& s) { init(s.base, &s.parts); }

void TypeContext::init(const BinaryStructure& base, const Partition* parts) {
  base_ = &base;
  n_ = base.n();
  version_ = next_ctx_version();
  binary_names_ = base.binary_names();
  std::vector<std::pair<PredId, std::vector<Vertex>>> preds;
  for (PredId u : base.unary_names()) {
    auto members = base.unary_members(u);
    if (!members.empty()) preds.emplace_back(u, std::move(members));
  }
  if (parts) {
    for (Vertex rep : parts->reps()) preds.emplace_back(part_pred(rep), parts->members(rep));
  }
  std::sort(preds.begin(), preds.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [id, members] : preds) {
    pred_index_[id] = static_cast<int>(preds_.size());
    preds_.push_back(id);
    std::vector<uint8_t> flags(n_ + 1, 0);
    for (Vertex v : members) flags[v] = 1;
    pred_flags_.push_back(std::move(flags));
    pred_members_.push_back(std::move(members));
  }
  adj_.assign(n_ + 1, {});
  Graph g = gaifman_graph(base);
  for (Vertex v = 1; v <= n_; ++v) adj_[v] = g.neighbors(v);
  vdist_.resize(n_ + 1);
  vdist_done_.assign(n_ + 1, 0);
  pdist_.resize(preds_.size());
  pdist_done_.assign(preds_.size(), 0);
}

int TypeContext::pred_slot(PredId pred) const {
  auto it = pred_index_.find(pred);
  return it == pred_index_.end() ? -1 : it->second;
}

bool TypeContext::in_pred(PredId pred, Vertex v) const {
  int slot = pred_slot(pred);
  return slot >= 0 && pred_flags_[slot][v] != 0;
}

const std::vector<Vertex>& TypeContext::pred_members(PredId pred) const {
  static const std::vector<Vertex> empty;
  int slot = pred_slot(pred);
  return slot < 0 ? empty : pred_members_[slot];
}

bool TypeContext::has_rel(PredId rel, Vertex u, Vertex v) const {
  return base_->has_binary(rel) && base_->has_pair(rel, u, v);
}

const std::vector<int>& TypeContext::vrow(Vertex v) {
  if (!vdist_done_[v]) {
    vdist_[v] = bfs_distances(adj_, {v}, n_);
    vdist_done_[v] = 1;
  }
  return vdist_[v];
}

int TypeContext::dist(Vertex u, Vertex v) {
  if (u == v) return 0;
  if (vdist_done_[u]) return vdist_[u][v];
  if (vdist_done_[v]) return vdist_[v][u];
  return vrow(u)[v];
}

int TypeContext::pred_dist(PredId pred, Vertex v) {
  int slot = pred_slot(pred);
  if (slot < 0) return n_ + 1;
  if (!pdist_done_[slot]) {
    pdist_[slot] = bfs_distances(adj_, pred_members_[slot], n_);
    pdist_done_[slot] = 1;
  }
  return pdist_[slot][v];
}

MaskId TypeContext::full_mask() { return MaskTable::instance().intern(preds_); }

MaskId TypeContext::reach_mask(const std::vector<Vertex>& tuple, int r) {
  std::vector<PredId> out;
  for (size_t slot = 0; slot < preds_.size(); ++slot) {
    for (Vertex a : tuple) {
      int d = pred_dist(preds_[slot], a);
      if (d <= std::min(r, n_)) {
        out.push_back(preds_[slot]);
        break;
      }
    }
  }
  return MaskTable::instance().intern(std::move(out));
}

namespace {

TypeContext::TpKey memo_key(MaskId mask, int k, int q, const std::vector<Vertex>& tuple) {
  MW_CHECK(tuple.size() <= 6, "tuples longer than 6 are unsupported");
  TypeContext::TpKey key;
  key.mask = mask;
  key.k = static_cast<int8_t>(k);
  key.q = static_cast<int8_t>(q);
  key.len = static_cast<int8_t>(tuple.size());
  for (size_t i = 0; i < tuple.size(); ++i) key.t[i] = static_cast<uint16_t>(tuple[i]);
  return key;
}

}  // namespace

class TypeComputer {
 public:
  static AtomId make_atom(TypeContext& ctx, MaskId mask, const std::vector<Vertex>& tuple,
                          int k, int q) {
    AtomRecord rec;
    rec.k = static_cast<int16_t>(k);
    rec.q = static_cast<int16_t>(q);
    rec.len = static_cast<int16_t>(tuple.size());
    int n = ctx.n();
    int rho_eff = rho_clamped(k, q, n + 1);  // distances beyond n are "far"
    const auto& preds = MaskTable::instance().preds(mask);
    rec.unary.resize(tuple.size());
    rec.self_rel.resize(tuple.size());
    for (size_t i = 0; i < tuple.size(); ++i) {
      for (PredId p : preds) {
        int d = ctx.pred_dist(p, tuple[i]);
        if (d <= n && d <= rho_eff - 1) rec.unary[i].emplace_back(p, d);
      }
      for (PredId r : ctx.binary_names())
        if (ctx.has_rel(r, tuple[i], tuple[i])) rec.self_rel[i].push_back(r);
    }
    for (size_t i = 0; i < tuple.size(); ++i)
      for (size_t j = i + 1; j < tuple.size(); ++j) {
        rec.eq.push_back(tuple[i] == tuple[j] ? 1 : 0);
        int d = ctx.dist(tuple[i], tuple[j]);
        rec.pair_dist.push_back((d <= n && d <= rho_eff) ? d : kFarDist);
        std::vector<std::pair<PredId, uint8_t>> flags;
        for (PredId r : ctx.binary_names()) {
          uint8_t m = 0;
          if (ctx.has_rel(r, tuple[i], tuple[j])) m |= 1;
          if (ctx.has_rel(r, tuple[j], tuple[i])) m |= 2;
          if (m) flags.emplace_back(r, m);
        }
        rec.rels.push_back(std::move(flags));
      }
    return AtomTable::instance().intern(std::move(rec));
  }
};

TypeId compute_tp(TypeContext& ctx, MaskId mask, const std::vector<Vertex>& tuple, int k,
                  int q) {
  MW_CHECK(static_cast<int>(tuple.size()) <= std::max(k, 0), "tuple longer than k");
  auto key = memo_key(mask, k, q, tuple);
  auto& memo = ctx.memo();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  TypeNode node;
  node.k = static_cast<int16_t>(k);
  node.q = static_cast<int16_t>(q);
  node.atom = TypeComputer::make_atom(ctx, mask, tuple, k, q);
  if (q > 0) {
    std::vector<Vertex> ext(tuple);
    ext.push_back(0);
    node.children.reserve(ctx.n());
    for (Vertex c = 1; c <= ctx.n(); ++c) {
      ext.back() = c;
      node.children.push_back(compute_tp(ctx, mask, ext, k + 1, q - 1));
    }
    std::sort(node.children.begin(), node.children.end());
    node.children.erase(std::unique(node.children.begin(), node.children.end()),
                        node.children.end());
  }
  TypeId id = TypeTable::instance().intern(std::move(node));
  memo.emplace(key, id);
  return id;
}

LtpId compute_ltp(TypeContext& ctx, const std::vector<Vertex>& tuple, int k, int q) {
  int r = rho_clamped(k, q, ctx.n());
  MaskId reach = ctx.reach_mask(tuple, r);
  TypeId inner = compute_tp(ctx, reach, tuple, k, q);
  return LtpTable::instance().intern(reach, inner);
}

namespace {

AtomId restrict_atom(AtomId id, MaskId keep) {
  const AtomRecord& rec = AtomTable::instance().record(id);
  const auto& preds = MaskTable::instance().preds(keep);
  AtomRecord out = rec;
  for (auto& entries : out.unary) {
    std::vector<std::pair<PredId, int32_t>> kept;
    for (auto& e : entries)
      if (std::binary_search(preds.begin(), preds.end(), e.first)) kept.push_back(e);
    entries = std::move(kept);
  }
  return AtomTable::instance().intern(std::move(out));
}

AtomId reclamp_atom(AtomId id, int k2, int q2) {
  const AtomRecord& rec = AtomTable::instance().record(id);
  AtomRecord out = rec;
  out.k = static_cast<int16_t>(k2);
  out.q = static_cast<int16_t>(q2);
  int rho_eff = rho_clamped(k2, q2, 1 << 28);
  for (auto& entries : out.unary) {
    std::vector<std::pair<PredId, int32_t>> kept;
    for (auto& e : entries)
      if (e.second <= rho_eff - 1) kept.push_back(e);
    entries = std::move(kept);
  }
  for (auto& d : out.pair_dist)
    if (d != kFarDist && d > rho_eff) d = kFarDist;
  return AtomTable::instance().intern(std::move(out));
}

std::map<std::pair<TypeId, MaskId>, TypeId>& restrict_memo() {
  static std::map<std::pair<TypeId, MaskId>, TypeId> m;
  return m;
}

std::map<TypeId, TypeId>& shift_memo() {
  static std::map<TypeId, TypeId> m;
  return m;
}

}  // namespace

TypeId restrict_type(TypeId t, MaskId keep) {
  auto key = std::make_pair(t, keep);
  auto& memo = restrict_memo();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const TypeNode& n = TypeTable::instance().node(t);
  TypeNode out;
  out.k = n.k;
  out.q = n.q;
  out.atom = restrict_atom(n.atom, keep);
  out.children.reserve(n.children.size());
  for (TypeId c : n.children) out.children.push_back(restrict_type(c, keep));
  std::sort(out.children.begin(), out.children.end());
  out.children.erase(std::unique(out.children.begin(), out.children.end()),
                     out.children.end());
  TypeId id = TypeTable::instance().intern(std::move(out));
  memo.emplace(key, id);
  return id;
}

LtpId restrict_ltp(LtpId l, MaskId keep) {
  auto& lt = LtpTable::instance();
  const auto& reach_preds = MaskTable::instance().preds(lt.reach(l));
  const auto& keep_preds = MaskTable::instance().preds(keep);
  std::vector<PredId> inter;
  std::set_intersection(reach_preds.begin(), reach_preds.end(), keep_preds.begin(),
                        keep_preds.end(), std::back_inserter(inter));
  MaskId mask = MaskTable::instance().intern(std::move(inter));
  return lt.intern(mask, restrict_type(lt.inner(l), mask));
}

TypeId shift_type(TypeId t) {
  auto& memo = shift_memo();
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  const TypeNode& n = TypeTable::instance().node(t);
  MW_CHECK(n.q > 0, "cannot shift a rank-(k,0) type");
  TypeNode out;
  out.k = static_cast<int16_t>(n.k + 1);
  out.q = static_cast<int16_t>(n.q - 1);
  out.atom = reclamp_atom(n.atom, n.k + 1, n.q - 1);
  if (n.q - 1 > 0) {
    out.children.reserve(n.children.size());
    for (TypeId c : n.children) out.children.push_back(shift_type(c));
    std::sort(out.children.begin(), out.children.end());
    out.children.erase(std::unique(out.children.begin(), out.children.end()),
                       out.children.end());
  }
  TypeId id = TypeTable::instance().intern(std::move(out));
  memo.emplace(t, id);
  return id;
}

LtpId shift_ltp(LtpId l) {
  static std::map<LtpId, LtpId> memo;
  if (auto it = memo.find(l); it != memo.end()) return it->second;
  auto& lt = LtpTable::instance();
  const TypeNode& inner = TypeTable::instance().node(lt.inner(l));
  MW_CHECK(inner.q > 0, "cannot shift a rank-(k,0) local type");
  int rho_next = rho_clamped(inner.k + 1, inner.q - 1, 1 << 28);
  // Reach at the smaller radius is readable off the top-level record.
  const AtomRecord& rec = AtomTable::instance().record(inner.atom);
  std::vector<PredId> reach;
  for (PredId p : MaskTable::instance().preds(lt.reach(l))) {
    int best = -1;
    for (const auto& entries : rec.unary)
      for (auto [pred, d] : entries)
        if (pred == p && (best < 0 || d < best)) best = d;
    if (best >= 0 && best <= rho_next) reach.push_back(p);
  }
  MaskId mask = MaskTable::instance().intern(std::move(reach));
  LtpId out = lt.intern(mask, shift_type(restrict_type(lt.inner(l), mask)));
  memo.emplace(l, out);
  return out;
}

std::vector<Vertex> greedy_scattered(TypeContext& ctx, const std::vector<Vertex>& candidates,
                                     int r, int cap) {
  std::vector<Vertex> chosen;
  for (Vertex v : candidates) {
    if (static_cast<int>(chosen.size()) >= cap) break;
    bool ok = true;
    for (Vertex u : chosen) {
      int d = ctx.dist(u, v);
      if (d <= std::min(r, ctx.n())) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(v);
  }
  return chosen;
}

StpId compute_stp(TypeContext& ctx, int k, int q, const std::vector<TypeId>& next_types) {
  StpRecord rec;
  rec.k = static_cast<int16_t>(k);
  rec.q = static_cast<int16_t>(q);
  if (q == 0 || ctx.n() == 0) return StpTable::instance().intern(std::move(rec));
  MW_CHECK(static_cast<int>(next_types.size()) == ctx.n() + 1,
           "next_types must be indexed 1..n");
  std::map<TypeId, std::vector<Vertex>> classes;
  for (Vertex v = 1; v <= ctx.n(); ++v) classes[next_types[v]].push_back(v);
  std::vector<std::pair<TypeId, const std::vector<Vertex>*>> cls;
  for (const auto& [t, vs] : classes) cls.emplace_back(t, &vs);
  int c = static_cast<int>(cls.size());
  rec.truncated = c > kMaxUnionClasses;
  int rho_eff = rho_clamped(k, q, ctx.n());
  int cap = k + q;
  auto add_entry = [&](const std::vector<TypeId>& key, const std::vector<Vertex>& members) {
    StpEntry entry;
    entry.class_key = key;
    // Step function changes only where r crosses a pairwise distance.
    std::vector<int> breakpoints = {1};
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        int d = ctx.dist(members[i], members[j]);
        if (d >= 1 && d <= std::min(rho_eff, ctx.n())) breakpoints.push_back(d);
      }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());
    for (int r : breakpoints) {
      int size = static_cast<int>(greedy_scattered(ctx, members, r, cap).size());
      if (entry.fn.empty() || entry.fn.back().second != size) entry.fn.emplace_back(r, size);
    }
    rec.entries.push_back(std::move(entry));
  };
  if (!rec.truncated) {
    // All nonempty unions of realized classes: formulas phi(x) of distance
    // rank (k+1,q-1) define exactly these vertex sets.
    for (uint32_t subset = 1; subset < (1u << c); ++subset) {
      std::vector<TypeId> key;
      std::vector<Vertex> members;
      for (int i = 0; i < c; ++i)
        if (subset & (1u << i)) {
          key.push_back(cls[i].first);
          members.insert(members.end(), cls[i].second->begin(), cls[i].second->end());
        }
      std::sort(members.begin(), members.end());
      add_entry(key, members);
    }
  } else {
    for (int i = 0; i < c; ++i) add_entry({cls[i].first}, *cls[i].second);
  }
  return StpTable::instance().intern(std::move(rec));
}

namespace {

bool atom_in_record(const AtomRecord& rec, const FormulaPtr& f,
                    const std::map<std::string, int>& env) {
  auto pos = [&](const std::string& v) {
    auto it = env.find(v);
    MW_CHECK(it != env.end(), "unassigned free variable " + v);
    MW_CHECK(it->second < rec.len, "variable index out of tuple");
    return it->second;
  };
  auto pair_index = [&](int i, int j) {
    // lexicographic over i<j pairs of 0..len-1
    return i * (2 * rec.len - i - 1) / 2 + (j - i - 1);
  };
  switch (f->kind) {
    case FKind::UnaryAtom: {
      int i = pos(f->var1);
      for (auto [p, d] : rec.unary[i])
        if (p == f->pred) return d == 0;
      return false;
    }
    case FKind::DistLT: {
      int i = pos(f->var1);
      for (auto [p, d] : rec.unary[i])
        if (p == f->pred) return d < f->radius;
      return false;
    }
    case FKind::Eq: {
      int i = pos(f->var1), j = pos(f->var2);
      if (i == j) return true;
      return rec.eq[pair_index(std::min(i, j), std::max(i, j))] != 0;
    }
    case FKind::DistLE: {
      int i = pos(f->var1), j = pos(f->var2);
      if (i == j) return f->radius >= 0;
      int d = rec.pair_dist[pair_index(std::min(i, j), std::max(i, j))];
      return d != kFarDist && d <= f->radius;
    }
    case FKind::BinaryAtom: {
      int i = pos(f->var1), j = pos(f->var2);
      if (i == j) {
        const auto& sr = rec.self_rel[i];
        return std::find(sr.begin(), sr.end(), f->pred) != sr.end();
      }
      bool swapped = i > j;
      int a = std::min(i, j), b = std::max(i, j);
      for (auto [p, m] : rec.rels[pair_index(a, b)])
        if (p == f->pred) return swapped ? (m & 2) : (m & 1);
      return false;
    }
    default:
      MW_CHECK(false, "not an atom");
  }
  return false;
}

}  // namespace

bool formula_in_type(const FormulaPtr& f, TypeId type,
                     const std::map<std::string, int>& var_index) {
  const TypeNode& node = TypeTable::instance().node(type);
  switch (f->kind) {
    case FKind::Not:
      return !formula_in_type(f->lhs, type, var_index);
    case FKind::And:
      return formula_in_type(f->lhs, type, var_index) &&
             formula_in_type(f->rhs, type, var_index);
    case FKind::Or:
      return formula_in_type(f->lhs, type, var_index) ||
             formula_in_type(f->rhs, type, var_index);
    case FKind::Implies:
      return !formula_in_type(f->lhs, type, var_index) ||
             formula_in_type(f->rhs, type, var_index);
    case FKind::Exists:
    case FKind::Forall: {
      MW_CHECK(node.q > 0, "quantifier exceeds the type's rank budget");
      const AtomRecord& rec = AtomTable::instance().record(node.atom);
      auto env = var_index;
      env[f->var1] = rec.len;
      bool ex = f->kind == FKind::Exists;
      for (TypeId c : node.children) {
        bool holds = formula_in_type(f->lhs, c, env);
        if (ex && holds) return true;
        if (!ex && !holds) return false;
      }
      return !ex;
    }
    default:
      return atom_in_record(AtomTable::instance().record(node.atom), f, var_index);
  }
}

bool formula_in_type(const FormulaPtr& f, TypeId type) {
  std::map<std::string, int> env;
  auto fv = free_variables(f);
  std::sort(fv.begin(), fv.end());  // x1 -> 0, x2 -> 1, ...
  for (size_t i = 0; i < fv.size(); ++i) env[fv[i]] = static_cast<int>(i);
  return formula_in_type(f, type, env);
}

bool evaluate(TypeContext& ctx, const FormulaPtr& f,
              const std::map<std::string, Vertex>& assignment) {
  auto lookup = [&](const std::string& v) {
    auto it = assignment.find(v);
    MW_CHECK(it != assignment.end(), "unassigned free variable " + v);
    return it->second;
  };
  switch (f->kind) {
    case FKind::UnaryAtom:
      return ctx.in_pred(f->pred, lookup(f->var1));
    case FKind::BinaryAtom:
      return ctx.has_rel(f->pred, lookup(f->var1), lookup(f->var2));
    case FKind::Eq:
      return lookup(f->var1) == lookup(f->var2);
    case FKind::DistLE: {
      int d = ctx.dist(lookup(f->var1), lookup(f->var2));
      return d <= ctx.n() && d <= f->radius;
    }
    case FKind::DistLT: {
      int d = ctx.pred_dist(f->pred, lookup(f->var1));
      return d <= ctx.n() && d < f->radius;
    }
    case FKind::Not:
      return !evaluate(ctx, f->lhs, assignment);
    case FKind::And:
      return evaluate(ctx, f->lhs, assignment) && evaluate(ctx, f->rhs, assignment);
    case FKind::Or:
      return evaluate(ctx, f->lhs, assignment) || evaluate(ctx, f->rhs, assignment);
    case FKind::Implies:
      return !evaluate(ctx, f->lhs, assignment) || evaluate(ctx, f->rhs, assignment);
    case FKind::Exists:
    case FKind::Forall: {
      bool ex = f->kind == FKind::Exists;
      auto asg = assignment;
      for (Vertex c = 1; c <= ctx.n(); ++c) {
        asg[f->var1] = c;
        bool holds = evaluate(ctx, f->lhs, asg);
        if (ex && holds) return true;
        if (!ex && !holds) return false;
      }
      return !ex;
    }
  }
  return false;
}

}  // namespace mw
