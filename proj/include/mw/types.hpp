#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mw {

// Vertices are dense 1-based ids; index 0 is unused in per-vertex arrays.
using Vertex = int;

// Unary/binary relation names are interned.  Positive ids index the global
// name table; a negative id -v denotes the part predicate whose part has
// minimum member (representative) v.
using PredId = int32_t;

inline bool is_part_pred(PredId p) { return p < 0; }
inline Vertex part_pred_rep(PredId p) { return -p; }
inline PredId part_pred(Vertex rep) { return -rep; }

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MW_CHECK(cond, msg)                                         \
  do {                                                              \
    if (!(cond)) throw ::mw::Error(std::string("check failed: ") + (msg)); \
  } while (0)

// Interned relation names, shared process-wide so that ids are comparable
// across structures.
class NameTable {
 public:
  static NameTable& instance();
  PredId intern(const std::string& name);
  const std::string& name(PredId id) const;
  // Printable form; handles part predicates.
  static std::string display(PredId id);

 private:
  std::vector<std::string> names_;
  std::vector<std::string> keys_;
};

PredId intern_name(const std::string& name);
std::string pred_name(PredId id);

// Unordered vertex pair packed into one key, min component first.
using PairKey = uint64_t;
inline PairKey pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}
inline Vertex pair_lo(PairKey k) { return static_cast<Vertex>(k >> 32); }
inline Vertex pair_hi(PairKey k) { return static_cast<Vertex>(k & 0xffffffffu); }

inline uint64_t hash_mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4);
  return h;
}

}  // namespace mw
