#pragma once

#include <cstdint>

#include "mw/formula.hpp"
#include "mw/graph.hpp"
#include "mw/structure.hpp"

namespace mw::gen {

Graph path(int n);
Graph cycle(int n);
Graph star(int leaves);
Graph complete(int n);
Graph complete_bipartite(int a, int b);

Graph gnm(int n, int m, uint64_t seed);
Graph gnp(int n, double p, uint64_t seed);
Graph tree(int n, uint64_t seed);
// Each vertex beyond the first links to min(d, #earlier) random earlier
// vertices: degeneracy at most d.
Graph d_degenerate(int n, int d, uint64_t seed);
// Underlying simple graph of a random d-out digraph.
Graph d_out(int n, int d, uint64_t seed);
// Random d-regular via the pairing model (retries until simple).
Graph regular(int n, int d, uint64_t seed);
Graph bipartite(int a, int b, double p, uint64_t seed);

// Random binary structure: unary predicates U1..Uu, binary R1..Rb, each
// ordered pair present with the given density.  components > 1 splits the
// vertex set into that many blocks with no relations across blocks.
BinaryStructure structure(int n, int unary, int binary, double density, uint64_t seed,
                          int components = 1);

// Random dist-FO formula of distance rank (k,q) with free variables among
// x1..xk; distance-atom radii are drawn from 1..max_radius (clamped to the
// rho budget at each level).
FormulaPtr random_formula(const FormulaSignature& sig, int k, int q, int max_radius,
                          uint64_t seed);

}  // namespace mw::gen
