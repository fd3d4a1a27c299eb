#pragma once

#include <string>
#include <vector>

#include "scut/instance.hpp"

namespace scut {

// Rooted tree decomposition of the supply graph. Bags hold sorted node lists.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<int> parent; // -1 at the root
    int root = -1;

    int width() const;        // max bag size - 1
    int depth() const;        // max edge distance from the root
    bool is_binary() const;   // every bag has <= 2 children
    std::vector<std::vector<int>> children() const;
};

struct TdValidation {
    bool ok = false;
    int width = -1;
    std::string violation; // names the broken axiom and a witness
};

// Checks tree structure plus the three decomposition axioms. Never throws;
// problems come back in the report.
TdValidation validate_tree_decomposition(const Instance& g, const TreeDecomposition& td);

// Min-fill elimination ordering; bags contained in a neighbor are absorbed.
// No optimality claim. Requires a connected supply graph.
TreeDecomposition heuristic_tree_decomposition(const Instance& g);

// Rebuilds the decomposition as a binary tree with bag size <= 3*(w+1) and
// depth <= 2*ceil(log2(b+1)) + 1, where w and b describe the input.
TreeDecomposition balance_tree_decomposition(const TreeDecomposition& td);

// PACE 2017 .td text. Vertices and bag ids are 1-based in the file. Bag 1 is
// the root unless a `c root <id>` comment says otherwise. When expected_n >= 0
// the header's vertex count must match it.
TreeDecomposition parse_td(const std::string& text, int expected_n = -1);
TreeDecomposition load_td(const std::string& path, int expected_n = -1);
std::string serialize_td(const TreeDecomposition& td, int n);

} // namespace scut
