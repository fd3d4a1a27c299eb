#pragma once

#include <map>
#include <utility>
#include <vector>

#include "scut/decomposition.hpp"

namespace scut {

// Level-grouped decomposition: bags of a binary decomposition are grouped in
// strata of ell levels (consecutive strata share their anchor level), which
// caps the tree depth at ceil(depth / (ell-1)) while bag sizes grow by at
// most 2^ell. Bags are numbered in BFS order, root first, children by
// ascending anchor id, so index order is a valid processing order.
struct KLDecomposition {
    std::vector<std::vector<int>> bags;      // sorted node lists
    std::vector<int> parent;                 // -1 at the root (bag 0)
    std::vector<std::vector<int>> adhesion;  // J = bag ∩ parent bag, empty at root
    std::vector<std::vector<int>> root_path; // bag ids from the bag up to the root
    std::vector<std::vector<int>> prefix;    // union of adhesions along root_path
    int ell = 2;
    int source_width = 0;

    int depth() const;
    std::vector<std::vector<int>> children() const;
};

// Requires a binary input tree and ell >= 2. source_width < 0 derives the
// width bound from the largest input bag.
KLDecomposition build_kl_decomposition(const TreeDecomposition& td, int ell,
                                       int source_width = -1);

// Deduplicated family of pairwise ground sets: for bags Y, Z the set
// (Y ∪ prefix(Y)) ∪ (Z ∪ prefix(Z)), over all unordered pairs including Y=Z.
struct GroundSetFamily {
    std::vector<std::vector<int>> ground_sets;     // sorted lists, lex order
    std::map<std::pair<int, int>, int> pair_index; // (min bag id, max bag id) -> set id

    int id_for(int y, int z) const;
};

GroundSetFamily build_ground_sets(const KLDecomposition& kd);

} // namespace scut
