#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mw/formula.hpp"
#include "mw/rho.hpp"
#include "mw/structure.hpp"
#include "mw/types.hpp"

namespace mw {

// Types, atomic types, local types and scatter types are hash-consed into
// process-wide tables so values are comparable across structures; ids are
// the identity.
using AtomId = int32_t;
using TypeId = int32_t;
using MaskId = int32_t;
using LtpId = int32_t;
using StpId = int32_t;

constexpr int kFarDist = -1;  // clamped-away distance inside atom records

// Interned sorted predicate-name sets (signature masks / reach sets).
class MaskTable {
 public:
  static MaskTable& instance();
  MaskId intern(std::vector<PredId> sorted_preds);
  const std::vector<PredId>& preds(MaskId id) const;

 private:
  std::vector<std::vector<PredId>> sets_;
  std::map<std::vector<PredId>, MaskId> index_;
};

// Canonical quantifier-free record of a tuple at distance rank (k,q),
// serialized flat.  Only positive/finite facts are stored: unary entries
// (pred, dist) with dist <= rho-1, pair distances clamped to kFarDist
// beyond rho, relation flags only when true.  This makes records over
// different signatures comparable exactly when their quantifier-free
// dist-FO theories agree.
//
// Layout: k, q, len,
//         per index i:  #unary, (pred, dist)*, #self, rel*,
//         per pair i<j: eq, dist, #rels, (rel, dirmask)*.
struct AtomRecord {
  std::vector<int32_t> data;
  bool operator==(const AtomRecord& o) const { return data == o.data; }

  int k() const { return data[0]; }
  int q() const { return data[1]; }
  int len() const { return data[2]; }
};

// Mutable decoded form used while building or transforming records.
struct AtomParts {
  int16_t k = 0, q = 0, len = 0;
  std::vector<std::vector<std::pair<PredId, int32_t>>> unary;
  std::vector<std::vector<PredId>> self_rel;
  std::vector<uint8_t> eq;
  std::vector<int32_t> pair_dist;
  std::vector<std::vector<std::pair<PredId, uint8_t>>> rels;

  AtomRecord encode() const;
  static AtomParts decode(const AtomRecord& rec);
};

class AtomTable {
 public:
  static AtomTable& instance();
  AtomId intern(AtomRecord rec);
  const AtomRecord& record(AtomId id) const;
  void clear();

 private:
  std::vector<AtomRecord> records_;
  std::unordered_map<uint64_t, std::vector<AtomId>> index_;
};

// Drops every interned atom, type, local type, scatter type and transform
// memo.  Only safe when no ids are retained by the caller; long batch runs
// use it between independent instances.
void reset_type_tables();

// Game normal form: (k,q) tag, atomic record, and for q > 0 the set of
// distinct (k+1,q-1)-types of all one-vertex extensions.
struct TypeNode {
  int16_t k = 0, q = 0;
  AtomId atom = 0;
  std::vector<TypeId> children;  // sorted, unique; empty iff q == 0
};

class TypeTable {
 public:
  static TypeTable& instance();
  TypeId intern(TypeNode node);
  const TypeNode& node(TypeId id) const;
  size_t size() const { return nodes_.size(); }
  void clear();

 private:
  std::vector<TypeNode> nodes_;
  std::unordered_map<uint64_t, std::vector<TypeId>> index_;
};

// Local type: reach-set names plus the type of the reduct to them.  The
// reach list participates in equality (predicates at distance exactly rho
// are in the reduct but invisible to the record).
class LtpTable {
 public:
  static LtpTable& instance();
  LtpId intern(MaskId reach, TypeId inner);
  MaskId reach(LtpId id) const;
  TypeId inner(LtpId id) const;
  void clear();

 private:
  std::vector<std::pair<MaskId, TypeId>> entries_;
  std::map<std::pair<MaskId, TypeId>, LtpId> index_;
};

struct StpEntry {
  std::vector<TypeId> class_key;          // union of these (k+1,q-1)-classes
  std::vector<std::pair<int, int>> fn;    // (radius threshold, greedy size)
};

struct StpRecord {
  int16_t k = 0, q = 0;
  bool truncated = false;  // more than kMaxUnionClasses realized classes
  std::vector<StpEntry> entries;
  bool operator==(const StpRecord& o) const;
};

constexpr int kMaxUnionClasses = 12;

class StpTable {
 public:
  static StpTable& instance();
  StpId intern(StpRecord rec);
  const StpRecord& record(StpId id) const;

 private:
  std::vector<StpRecord> records_;
  std::unordered_map<uint64_t, std::vector<StpId>> index_;
};

// Borrowing view of one structure: adjacency, lazy BFS rows, predicate
// contents.  The referenced structure must stay alive and unchanged.
class TypeContext {
 public:
  explicit TypeContext(const BinaryStructure& s);
  explicit TypeContext(const PartitionedStructure& s);

  int n() const { return n_; }
  uint64_t version() const { return version_; }
  const std::vector<PredId>& preds() const { return preds_; }
  const std::vector<PredId>& binary_names() const { return binary_names_; }
  bool in_pred(PredId pred, Vertex v) const;
  const std::vector<Vertex>& pred_members(PredId pred) const;
  bool has_rel(PredId rel, Vertex u, Vertex v) const;
  const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }

  // Exact Gaifman distance, n+1 when unreachable.
  int dist(Vertex u, Vertex v);
  int pred_dist(PredId pred, Vertex v);

  MaskId full_mask();
  // reach_r as a mask id (sorted pred names within distance <= r).
  MaskId reach_mask(const std::vector<Vertex>& tuple, int r);

  struct TpKey {
    MaskId mask = 0;
    int8_t k = 0, q = 0, len = 0;
    uint16_t t[6] = {0, 0, 0, 0, 0, 0};
    bool operator==(const TpKey& o) const {
      return mask == o.mask && k == o.k && q == o.q && len == o.len &&
             std::equal(t, t + 6, o.t);
    }
  };
  struct TpKeyHash {
    size_t operator()(const TpKey& x) const {
      uint64_t h = hash_mix(x.mask + 1, hash_mix(x.k, hash_mix(x.q, x.len)));
      for (int i = 0; i < 6; ++i) h = hash_mix(h, x.t[i]);
      return static_cast<size_t>(h);
    }
  };
  std::unordered_map<TpKey, TypeId, TpKeyHash>& memo() { return memo_; }

 private:
  void init(const BinaryStructure& base, const Partition* parts);
  const std::vector<int>& vrow(Vertex v);
  int pred_slot(PredId pred) const;

  int n_ = 0;
  uint64_t version_ = 0;
  std::vector<PredId> preds_;  // nonempty unary predicates, sorted
  std::vector<std::vector<Vertex>> pred_members_;
  std::vector<std::vector<uint8_t>> pred_flags_;
  std::vector<PredId> binary_names_;
  const BinaryStructure* base_ = nullptr;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<int>> vdist_;
  std::vector<uint8_t> vdist_done_;
  std::vector<std::vector<int>> pdist_;
  std::vector<uint8_t> pdist_done_;
  std::map<PredId, int> pred_index_;
  std::unordered_map<TpKey, TypeId, TpKeyHash> memo_;
  friend class TypeComputer;
};

// tp_{k,q} of a tuple in the reduct keeping `mask` unary predicates.
TypeId compute_tp(TypeContext& ctx, MaskId mask, const std::vector<Vertex>& tuple, int k,
                  int q);

// ltp_{k,q}: reach set at radius rho(k,q) plus the type of that reduct.
LtpId compute_ltp(TypeContext& ctx, const std::vector<Vertex>& tuple, int k, int q);

// Signature restriction of a normal form (memoized).
TypeId restrict_type(TypeId t, MaskId keep);
LtpId restrict_ltp(LtpId l, MaskId keep);

// Rank shift (k,q) -> (k+1,q-1) of a normal form: distances reclamped,
// extension tower shortened at the bottom (memoized).
TypeId shift_type(TypeId t);
LtpId shift_ltp(LtpId l);

// Greedy inclusionwise-maximal r-scattered subset of `candidates`
// (ascending vertex order), stopping at cap.
std::vector<Vertex> greedy_scattered(TypeContext& ctx, const std::vector<Vertex>& candidates,
                                     int r, int cap);

// Scatter type from the per-vertex (k+1,q-1) types (ignored when q = 0).
StpId compute_stp(TypeContext& ctx, int k, int q, const std::vector<TypeId>& next_types);

// Decides A |= phi(asg) by structural membership in the game normal form.
// Atoms over predicates absent from the record are false.
bool formula_in_type(const FormulaPtr& f, TypeId type,
                     const std::map<std::string, int>& var_index);
bool formula_in_type(const FormulaPtr& f, TypeId type);  // free vars x1->0,...

// Direct dist-FO semantics on the structure behind ctx.
bool evaluate(TypeContext& ctx, const FormulaPtr& f,
              const std::map<std::string, Vertex>& assignment);

}  // namespace mw
