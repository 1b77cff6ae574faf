#include "mw/structure.hpp"

#include <algorithm>

#include "mw/bfs.hpp"

namespace mw {

NameTable& NameTable::instance() {
  static NameTable t;
  return t;
}

PredId NameTable::intern(const std::string& name) {
  for (size_t i = 0; i < keys_.size(); ++i)
    if (keys_[i] == name) return static_cast<PredId>(i + 1);
  keys_.push_back(name);
  return static_cast<PredId>(keys_.size());
}

const std::string& NameTable::name(PredId id) const {
  MW_CHECK(id >= 1 && id <= static_cast<PredId>(keys_.size()), "bad name id");
  return keys_[id - 1];
}

std::string NameTable::display(PredId id) {
  if (is_part_pred(id)) return "P" + std::to_string(part_pred_rep(id));
  return instance().name(id);
}

PredId intern_name(const std::string& name) { return NameTable::instance().intern(name); }
std::string pred_name(PredId id) { return NameTable::display(id); }

void BinaryStructure::add_unary(PredId name) {
  MW_CHECK(!has_unary(name) && !has_binary(name), "duplicate relation name");
  unary_names_.push_back(name);
  unary_sets_.emplace_back(n_ + 1, 0);
}

void BinaryStructure::add_binary(PredId name) {
  MW_CHECK(!has_unary(name) && !has_binary(name), "duplicate relation name");
  binary_names_.push_back(name);
  succ_.emplace_back(n_ + 1);
}

int BinaryStructure::unary_index(PredId name) const {
  for (size_t i = 0; i < unary_names_.size(); ++i)
    if (unary_names_[i] == name) return static_cast<int>(i);
  return -1;
}

int BinaryStructure::binary_index(PredId name) const {
  for (size_t i = 0; i < binary_names_.size(); ++i)
    if (binary_names_[i] == name) return static_cast<int>(i);
  return -1;
}

void BinaryStructure::set_unary(PredId name, Vertex v, bool member) {
  int i = unary_index(name);
  MW_CHECK(i >= 0, "unknown unary relation " + pred_name(name));
  MW_CHECK(v >= 1 && v <= n_, "vertex out of range");
  unary_sets_[i][v] = member ? 1 : 0;
}

bool BinaryStructure::in_unary(PredId name, Vertex v) const {
  int i = unary_index(name);
  MW_CHECK(i >= 0, "unknown unary relation " + pred_name(name));
  return unary_sets_[i][v] != 0;
}

std::vector<Vertex> BinaryStructure::unary_members(PredId name) const {
  int i = unary_index(name);
  MW_CHECK(i >= 0, "unknown unary relation " + pred_name(name));
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n_; ++v)
    if (unary_sets_[i][v]) out.push_back(v);
  return out;
}

void BinaryStructure::add_pair(PredId rel, Vertex u, Vertex v) {
  int i = binary_index(rel);
  MW_CHECK(i >= 0, "unknown binary relation " + pred_name(rel));
  MW_CHECK(u >= 1 && u <= n_ && v >= 1 && v <= n_, "vertex out of range");
  auto& s = succ_[i][u];
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
}

bool BinaryStructure::has_pair(PredId rel, Vertex u, Vertex v) const {
  int i = binary_index(rel);
  MW_CHECK(i >= 0, "unknown binary relation " + pred_name(rel));
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  const auto& s = succ_[i][u];
  return std::binary_search(s.begin(), s.end(), v);
}

bool BinaryStructure::gaifman_related(Vertex u, Vertex v) const {
  for (size_t i = 0; i < binary_names_.size(); ++i) {
    const auto& su = succ_[i][u];
    if (std::binary_search(su.begin(), su.end(), v)) return true;
    const auto& sv = succ_[i][v];
    if (std::binary_search(sv.begin(), sv.end(), u)) return true;
  }
  return false;
}

const std::vector<std::vector<Vertex>>& BinaryStructure::successors(PredId rel) const {
  int i = binary_index(rel);
  MW_CHECK(i >= 0, "unknown binary relation " + pred_name(rel));
  return succ_[i];
}

size_t BinaryStructure::pair_count(PredId rel) const {
  int i = binary_index(rel);
  MW_CHECK(i >= 0, "unknown binary relation " + pred_name(rel));
  size_t c = 0;
  for (const auto& s : succ_[i]) c += s.size();
  return c;
}

bool BinaryStructure::operator==(const BinaryStructure& o) const {
  return n_ == o.n_ && unary_names_ == o.unary_names_ && unary_sets_ == o.unary_sets_ &&
         binary_names_ == o.binary_names_ && succ_ == o.succ_;
}

Graph gaifman_graph(const BinaryStructure& s) {
  Graph g(s.n());
  for (const auto& rel : s.succ_)
    for (Vertex u = 1; u <= s.n(); ++u)
      for (Vertex v : rel[u])
        if (u != v) g.add_edge(u, v);
  return g;
}

std::vector<PredId> PartitionedStructure::nonempty_unary() const {
  std::vector<PredId> out;
  for (PredId u : base.unary_names())
    if (!base.unary_members(u).empty()) out.push_back(u);
  for (Vertex r : parts.reps()) out.push_back(part_pred(r));
  return out;
}

bool PartitionedStructure::in_pred(PredId pred, Vertex v) const {
  if (is_part_pred(pred)) return parts.rep(v) == part_pred_rep(pred);
  return base.has_unary(pred) && base.in_unary(pred, v);
}

std::vector<Vertex> PartitionedStructure::pred_members(PredId pred) const {
  if (is_part_pred(pred)) return parts.members(part_pred_rep(pred));
  return base.unary_members(pred);
}

PartitionedStructure initial_structure(const BinaryStructure& subject) {
  BinaryStructure base(subject.n());
  for (PredId u : subject.unary_names()) {
    base.add_unary(u);
    for (Vertex v : subject.unary_members(u)) base.set_unary(u, v, true);
  }
  for (PredId b : subject.binary_names()) base.add_binary(b);
  return PartitionedStructure(std::move(base), Partition(subject.n()));
}

namespace {

std::vector<PredId> reach_from_dist(const PartitionedStructure* ps, const BinaryStructure& s,
                                    const std::vector<Vertex>& vs, int r) {
  Graph g = gaifman_graph(s);
  int cap = (r == kRadiusInf) ? s.n() : std::min(r, s.n());
  auto dist = bfs_distances(g, vs, cap);
  std::vector<PredId> out;
  for (PredId u : s.unary_names()) {
    bool hit = false;
    for (Vertex v = 1; v <= s.n() && !hit; ++v)
      if (dist[v] <= cap && s.in_unary(u, v)) hit = true;
    if (hit) out.push_back(u);
  }
  if (ps) {
    std::vector<Vertex> reps;
    for (Vertex v = 1; v <= s.n(); ++v)
      if (dist[v] <= cap) reps.push_back(ps->parts.rep(v));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    for (Vertex rep : reps) out.push_back(part_pred(rep));
  }
  return out;
}

}  // namespace

std::vector<PredId> reach_set(const PartitionedStructure& s, const std::vector<Vertex>& vs,
                              int r) {
  return reach_from_dist(&s, s.base, vs, r);
}

std::vector<PredId> reach_set(const BinaryStructure& s, const std::vector<Vertex>& vs, int r) {
  return reach_from_dist(nullptr, s, vs, r);
}

int radius_width(const PartitionedStructure& s, int r) {
  Graph g = gaifman_graph(s.base);
  int cap = (r == kRadiusInf) ? s.n() : std::min(r, s.n());
  std::vector<PredId> named;
  for (PredId u : s.base.unary_names())
    if (!s.base.unary_members(u).empty()) named.push_back(u);
  int best = 0;
  for (Vertex v = 1; v <= s.n(); ++v) {
    auto dist = bfs_distances(g, {v}, cap);
    int count = 0;
    for (PredId u : named) {
      for (Vertex w = 1; w <= s.n(); ++w)
        if (dist[w] <= cap && s.base.in_unary(u, w)) {
          ++count;
          break;
        }
    }
    std::vector<Vertex> reps;
    for (Vertex w = 1; w <= s.n(); ++w)
      if (dist[w] <= cap) reps.push_back(s.parts.rep(w));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    count += static_cast<int>(reps.size());
    best = std::max(best, count);
  }
  return best;
}

void merge_inplace(PartitionedStructure& s, Vertex p_rep, Vertex q_rep) {
  MW_CHECK(p_rep >= 1 && p_rep <= s.n() && q_rep >= 1 && q_rep <= s.n(),
           "unknown part name");
  Vertex p = s.parts.rep(p_rep), q = s.parts.rep(q_rep);
  MW_CHECK(p != q, "merge of same part");
  s.parts.merge(p, q);
}

std::vector<std::pair<Vertex, Vertex>> resolve_inplace(PartitionedStructure& s, PredId rel,
                                                       Vertex p_rep, Vertex q_rep) {
  MW_CHECK(s.base.has_binary(rel), "unknown binary relation " + pred_name(rel));
  MW_CHECK(p_rep >= 1 && p_rep <= s.n() && q_rep >= 1 && q_rep <= s.n(),
           "unknown part name");
  std::vector<std::pair<Vertex, Vertex>> added;
  auto ps = s.parts.members(s.parts.rep(p_rep));
  auto qs = s.parts.members(s.parts.rep(q_rep));
  for (Vertex a : ps)
    for (Vertex b : qs) {
      if (a == b) continue;  // diagonal pairs carry no Gaifman content
      bool related = false;
      for (PredId r2 : s.base.binary_names())
        if (s.base.has_pair(r2, a, b)) {
          related = true;
          break;
        }
      if (!related) {
        s.base.add_pair(rel, a, b);
        added.emplace_back(a, b);
      }
    }
  return added;
}

PartitionedStructure apply_merge(const PartitionedStructure& s, Vertex p_rep, Vertex q_rep) {
  PartitionedStructure out = s;
  merge_inplace(out, p_rep, q_rep);
  return out;
}

PartitionedStructure apply_resolve(const PartitionedStructure& s, PredId rel, Vertex p_rep,
                                   Vertex q_rep) {
  PartitionedStructure out = s;
  resolve_inplace(out, rel, p_rep, q_rep);
  return out;
}

}  // namespace mw
