#pragma once

#include <vector>

#include "mw/structure.hpp"

namespace mw {

// Exact minimax over the global (k,q)-game tree: atomic-type check, then
// Spoiler picks a vertex on either side, Duplicator answers on the other.
// Deliberately independent of the normal-form type machinery; guarded to
// n_A + n_B <= 20 and q <= 3.
bool duplicator_wins_global(const BinaryStructure& a, const BinaryStructure& b,
                            const std::vector<Vertex>& ta, const std::vector<Vertex>& tb,
                            int k, int q);

}  // namespace mw
