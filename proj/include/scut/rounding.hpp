#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "scut/relaxation.hpp"

namespace scut {

struct DerandStep {
    int bag = 0;
    Mask chosen = 0;
    Rat expected_gamma; // E[cap cut - 2 lambda dem cut | prefix after this choice]
};

struct RoundResult {
    Mask side = 0;
    bool proper = false; // both sides nonempty
    std::optional<Rat> phi;
    Rat initial_gamma;            // E[gamma] before any choice (derandomized mode)
    std::vector<DerandStep> trace; // derandomized mode only
};

// Sequential rounding of a relaxation solution along the grouped
// decomposition. Bags are visited in index (BFS) order; at bag Y the nodes of
// Y not already fixed by the prefix are drawn from the table marginal of
// scope(Y) conditioned on the assignment of V^Y. Conditionals are exact
// rationals throughout, including the drawn thresholds.
class Rounder {
public:
    Rounder(const Instance& inst, const KLDecomposition& kd, const XYSolution& sol);

    int bag_count() const { return static_cast<int>(fresh_.size()); }
    Mask bag_mask(int y) const { return bag_[static_cast<std::size_t>(y)]; }
    Mask prefix_mask(int y) const { return prefix_[static_cast<std::size_t>(y)]; }
    Mask scope_mask(int y) const { return bag_[static_cast<std::size_t>(y)] | prefix_[static_cast<std::size_t>(y)]; }
    Mask fresh_mask(int y) const { return fresh_[static_cast<std::size_t>(y)]; }
    // Nodes fixed once the first k bags have been processed.
    Mask assigned_mask(int k) const { return assigned_[static_cast<std::size_t>(k)]; }

    // Positive-probability choices for the fresh nodes of bag y given the
    // partial side, ascending by mask; the probabilities sum to one.
    std::vector<std::pair<Mask, Rat>> bag_distribution(int y, Mask side) const;

    // P(u, v separated | first k bags produced `side` on assigned_mask(k)).
    // Exact for every stage, from the unconditional law (k = 0) down to the
    // indicator at k = bag_count().
    Rat separation_probability(int u, int v, int k, Mask side) const;

    // E[crossing capacity - 2 lambda crossing demand | prefix], lambda the
    // relaxation optimum; the quantity the derandomized pass keeps nonpositive.
    Rat conditional_gamma(int k, Mask side) const;

    Mask sample(std::mt19937_64& rng) const;

    RoundResult randomized(uint64_t seed) const;
    RoundResult derandomized() const;

    // Exact law of the full process outcome; guarded by the product of the
    // per-bag choice counts.
    std::map<Mask, Rat> enumerate_distribution() const;

private:
    Rat node_probability(int a, Mask asg, Mask side) const;
    int lca(int y, int z) const;
    RoundResult finish(Mask side) const;

    const Instance* inst_;
    const KLDecomposition* kd_;
    const XYSolution* sol_;
    std::vector<Mask> bag_, prefix_, fresh_;
    std::vector<Mask> assigned_; // size bag_count()+1, cumulative fresh
    std::vector<int> least_bag_; // per node: the bag where it is fresh
};

} // namespace scut
