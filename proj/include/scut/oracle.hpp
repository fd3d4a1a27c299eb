#pragma once

#include "scut/instance.hpp"

namespace scut {

// Exhaustive sparsest-cut search over all proper cuts, exact arithmetic.
// The reported side is the one containing node 0; among optima the
// lexicographically smallest member list wins. Requires 2 <= n <= 24.
Cut exact_sparsest_cut(const Instance& inst, bool parallel = true);

} // namespace scut
