#pragma once

#include <vector>

#include "mw/types.hpp"

namespace mw {

// Partition of {1..n}.  The representative of a part is its minimum member,
// which is stable under merges (min of a union).
class Partition {
 public:
  Partition() = default;
  explicit Partition(int n);  // singletons

  int n() const { return static_cast<int>(rep_.size()) - 1; }
  Vertex rep(Vertex v) const { return rep_[v]; }
  bool same_part(Vertex u, Vertex v) const { return rep_[u] == rep_[v]; }

  // Merges the parts containing u and v; the union keeps the smaller rep.
  void merge(Vertex u, Vertex v);

  int part_count() const;
  std::vector<Vertex> reps() const;  // sorted representatives
  std::vector<Vertex> members(Vertex rep) const;
  std::vector<std::vector<Vertex>> parts() const;  // grouped by rep, sorted

  // True if every part of *this is contained in a part of coarser.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition& o) const { return rep_ == o.rep_; }

 private:
  std::vector<Vertex> rep_;  // rep_[v] = min vertex of v's part
};

}  // namespace mw
