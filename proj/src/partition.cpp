#include "mw/partition.hpp"

#include <algorithm>
#include <map>

namespace mw {

Partition::Partition(int n) : rep_(n + 1) {
  for (int v = 0; v <= n; ++v) rep_[v] = v;
}

void Partition::merge(Vertex u, Vertex v) {
  MW_CHECK(u >= 1 && u <= n() && v >= 1 && v <= n(), "merge vertex out of range");
  Vertex a = rep_[u], b = rep_[v];
  MW_CHECK(a != b, "merge of same part");
  if (a > b) std::swap(a, b);
  for (Vertex w = 1; w <= n(); ++w)
    if (rep_[w] == b) rep_[w] = a;
}

int Partition::part_count() const {
  int c = 0;
  for (Vertex v = 1; v <= n(); ++v)
    if (rep_[v] == v) ++c;
  return c;
}

std::vector<Vertex> Partition::reps() const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n(); ++v)
    if (rep_[v] == v) out.push_back(v);
  return out;
}

std::vector<Vertex> Partition::members(Vertex rep) const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n(); ++v)
    if (rep_[v] == rep) out.push_back(v);
  return out;
}

std::vector<std::vector<Vertex>> Partition::parts() const {
  std::map<Vertex, std::vector<Vertex>> by_rep;
  for (Vertex v = 1; v <= n(); ++v) by_rep[rep_[v]].push_back(v);
  std::vector<std::vector<Vertex>> out;
  out.reserve(by_rep.size());
  for (auto& [r, vs] : by_rep) out.push_back(std::move(vs));
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (n() != coarser.n()) return false;
  for (Vertex v = 1; v <= n(); ++v)
    if (coarser.rep_[v] != coarser.rep_[rep_[v]]) return false;
  return true;
}

}  // namespace mw
