#pragma once

#include <cstdint>
#include <vector>

namespace scut {

// Node subsets on the exact-arithmetic paths are uint64_t bitmasks; those code
// paths are all guarded to small n before masks are formed.
using Mask = uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1ULL; }
inline Mask bit(int i) { return 1ULL << i; }

inline std::vector<int> mask_to_list(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(__builtin_ctzll(m));
        m &= m - 1;
    }
    return out;
}

inline Mask list_to_mask(const std::vector<int>& xs) {
    Mask m = 0;
    for (int x : xs) m |= bit(x);
    return m;
}

// Position of node `v` within the sorted node list of `set_mask`; v must be set.
inline int local_index(Mask set_mask, int v) {
    return popcount(set_mask & (bit(v) - 1));
}

// Expand a local mask (over the sorted members of set_mask) to a global mask.
inline Mask expand_local(Mask set_mask, uint32_t local) {
    Mask out = 0;
    while (local) {
        int i = __builtin_ctz(local);
        local &= local - 1;
        Mask s = set_mask;
        while (i--) s &= s - 1;
        out |= s & -s;
    }
    return out;
}

// Compress a global mask (subset of set_mask) to the local index space.
inline uint32_t compress_to_local(Mask set_mask, Mask global) {
    uint32_t out = 0;
    int idx = 0;
    while (set_mask) {
        Mask lowest = set_mask & -set_mask;
        if (global & lowest) out |= 1u << idx;
        set_mask ^= lowest;
        ++idx;
    }
    return out;
}

} // namespace scut
