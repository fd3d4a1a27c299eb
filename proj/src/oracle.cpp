#include "scut/oracle.hpp"

#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scut {

namespace {

struct IncidentEdge {
    int other;
    const Rat* w;
    bool is_supply;
};

// Running best over candidate sides. Order: defined phi beats undefined,
// smaller phi beats larger, ties go to the lexicographically smallest
// member list. That is a total order on sides, so any chunking of the
// enumeration merges to the same answer.
struct Best {
    bool any = false;
    Rat cap, dem;
    Mask side = 0;

    // true when (c, d) at `mask` beats the current best
    bool improves(const Rat& c, const Rat& d, Mask mask) const {
        if (!any) return true;
        if (d == 0 && dem == 0) return mask_to_list(mask) < mask_to_list(side);
        if (d == 0) return false;
        if (dem == 0) return true;
        Rat lhs = c * dem, rhs = cap * d;
        if (lhs != rhs) return lhs < rhs;
        return mask_to_list(mask) < mask_to_list(side);
    }

    void take(const Rat& c, const Rat& d, Mask mask) {
        any = true;
        cap = c;
        dem = d;
        side = mask;
    }
};

// Walks sides containing node 0 in Gray-code order over bits 1..n-1,
// maintaining crossing sums incrementally. Index i corresponds to the side
// bit0 | (gray(i) << 1).
Best scan_range(const Instance& inst, const std::vector<std::vector<IncidentEdge>>& adj,
                uint64_t lo, uint64_t hi) {
    const int n = inst.n;
    const Mask full = (n == 64) ? ~Mask{0} : (bit(n) - 1);
    Mask side = Mask{1} | (static_cast<Mask>(lo ^ (lo >> 1)) << 1);

    Rat cap = 0, dem = 0;
    for (const auto& e : inst.supply)
        if (has_bit(side, e.u) != has_bit(side, e.v)) cap += e.w;
    for (const auto& e : inst.demand)
        if (has_bit(side, e.u) != has_bit(side, e.v)) dem += e.w;

    Best best;
    for (uint64_t i = lo;; ++i) {
        if (side != full && best.improves(cap, dem, side)) best.take(cap, dem, side);
        if (i + 1 >= hi) break;
        int v = 1 + std::countr_zero(i + 1);
        side ^= bit(v);
        bool now_in = has_bit(side, v);
        for (const auto& ie : adj[v]) {
            Rat& sum = ie.is_supply ? cap : dem;
            if (has_bit(side, ie.other) != now_in)
                sum += *ie.w; // edge started crossing
            else
                sum -= *ie.w;
        }
    }
    return best;
}

} // namespace

Cut exact_sparsest_cut(const Instance& inst, bool parallel) {
    if (inst.n < 2) throw std::runtime_error("exact search needs n >= 2");
    if (inst.n > 24) throw std::runtime_error("exact search capped at n <= 24");

    std::vector<std::vector<IncidentEdge>> adj(inst.n);
    for (const auto& e : inst.supply) {
        adj[e.u].push_back({e.v, &e.w, true});
        adj[e.v].push_back({e.u, &e.w, true});
    }
    for (const auto& e : inst.demand) {
        adj[e.u].push_back({e.v, &e.w, false});
        adj[e.v].push_back({e.u, &e.w, false});
    }

    const uint64_t total = uint64_t{1} << (inst.n - 1); // sides containing node 0
    uint64_t chunks = 1;
    if (parallel && total >= 4096) {
        chunks = 256;
#ifdef _OPENMP
        chunks = std::max<uint64_t>(chunks, 4 * omp_get_max_threads());
#endif
        chunks = std::min(chunks, total / 1024);
    }

    std::vector<Best> partial(chunks);
    const uint64_t step = total / chunks;
#pragma omp parallel for schedule(dynamic) if (parallel && chunks > 1)
    for (uint64_t c = 0; c < chunks; ++c) {
        uint64_t lo = c * step;
        uint64_t hi = (c + 1 == chunks) ? total : lo + step;
        partial[c] = scan_range(inst, adj, lo, hi);
    }

    Best best;
    for (const auto& p : partial)
        if (p.any && best.improves(p.cap, p.dem, p.side)) best.take(p.cap, p.dem, p.side);

    return make_cut(inst, best.side);
}

} // namespace scut
