#include "scut/rounding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace scut {

namespace {

// Positive-mass assignments of `set` that agree with `vals` on `fixed`,
// read off the cached marginal table of `set`.
std::vector<std::pair<Mask, Rat>> support(const XYSolution& sol, Mask set, Mask fixed,
                                          Mask vals) {
    const std::vector<Rat>& table = sol.marginal(set);
    std::vector<std::pair<Mask, Rat>> out;
    for (std::size_t a = 0; a < table.size(); ++a) {
        if (table[a] == 0) continue;
        Mask ga = expand_local(set, static_cast<uint32_t>(a));
        if ((ga & fixed) == vals) out.push_back({ga, table[a]});
    }
    return out;
}

} // namespace

Rounder::Rounder(const Instance& inst, const KLDecomposition& kd, const XYSolution& sol)
    : inst_(&inst), kd_(&kd), sol_(&sol) {
    const std::size_t b = kd.bags.size();
    bag_.reserve(b);
    prefix_.reserve(b);
    fresh_.reserve(b);
    assigned_.assign(1, 0);
    least_bag_.assign(static_cast<std::size_t>(inst.n), -1);
    for (std::size_t y = 0; y < b; ++y) {
        bag_.push_back(list_to_mask(kd.bags[y]));
        prefix_.push_back(list_to_mask(kd.prefix[y]));
        Mask fresh = bag_.back() & ~prefix_.back();
        fresh_.push_back(fresh);
        if ((fresh & assigned_.back()) != 0)
            throw std::logic_error("rounding: a node is fresh in two bags");
        assigned_.push_back(assigned_.back() | fresh);
        for (int v : mask_to_list(fresh)) least_bag_[static_cast<std::size_t>(v)] = static_cast<int>(y);
    }
    if (assigned_.back() != bit(inst.n) - 1)
        throw std::logic_error("rounding: bags do not cover every node");
}

int Rounder::lca(int y, int z) const {
    const auto& py = kd_->root_path[static_cast<std::size_t>(y)];
    const auto& pz = kd_->root_path[static_cast<std::size_t>(z)];
    std::vector<char> on_y(bag_.size(), 0);
    for (int id : py) on_y[static_cast<std::size_t>(id)] = 1;
    for (int id : pz)
        if (on_y[static_cast<std::size_t>(id)]) return id;
    throw std::logic_error("rounding: disjoint root paths");
}

std::vector<std::pair<Mask, Rat>> Rounder::bag_distribution(int y, Mask side) const {
    Mask pre = prefix_[static_cast<std::size_t>(y)];
    Mask t = side & pre;
    const Rat& denom = sol_->x(pre, t);
    if (denom == 0)
        throw std::logic_error("rounding: bag " + std::to_string(y) +
                               " conditioned on a zero-probability prefix");
    std::vector<std::pair<Mask, Rat>> out;
    for (auto& [tau, val] : support(*sol_, scope_mask(y), pre, t))
        out.push_back({tau & fresh_[static_cast<std::size_t>(y)], val / denom});
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Conditional probability that node a joins the side, given the assignment of
// the first bags. Conditioning collapses onto the assigned part of the prefix
// of the bag where a is fresh.
Rat Rounder::node_probability(int a, Mask asg, Mask side) const {
    int xa = least_bag_[static_cast<std::size_t>(a)];
    Mask d = prefix_[static_cast<std::size_t>(xa)] & asg;
    Mask t = side & d;
    const Rat& denom = sol_->x(d, t);
    if (denom == 0) throw std::logic_error("rounding: zero-probability conditioning");
    return sol_->x(d | bit(a), t | bit(a)) / denom;
}

Rat Rounder::separation_probability(int u, int v, int k, Mask side) const {
    if (u == v) throw std::invalid_argument("separation of a pair needs two nodes");
    Mask asg = assigned_[static_cast<std::size_t>(k)];
    side &= asg;
    bool du = has_bit(asg, u), dv = has_bit(asg, v);
    if (du && dv) return has_bit(side, u) != has_bit(side, v) ? Rat(1) : Rat(0);
    if (du != dv) {
        int fixed = du ? u : v, open = du ? v : u;
        Rat g = node_probability(open, asg, side);
        return has_bit(side, fixed) ? Rat(1) - g : g;
    }

    int xu = least_bag_[static_cast<std::size_t>(u)];
    int xv = least_bag_[static_cast<std::size_t>(v)];
    int w = lca(xu, xv);
    if (w < k) {
        // The meeting bag is processed, so the two endpoints sit in subtrees
        // whose conditionals depend on disjoint, already-fixed separators.
        Rat gu = node_probability(u, asg, side);
        Rat gv = node_probability(v, asg, side);
        return gu * (1 - gv) + gv * (1 - gu);
    }

    // Unprocessed meeting bag: enumerate its full scope assignment, under
    // which the endpoints become independent.
    Mask scope = scope_mask(w);
    Mask dw = prefix_[static_cast<std::size_t>(w)] & asg;
    Mask tw = side & dw;
    const Rat& denom = sol_->x(dw, tw);
    if (denom == 0) throw std::logic_error("rounding: zero-probability conditioning");
    Rat acc(0);
    for (auto& [tau, val] : support(*sol_, scope, dw, tw)) {
        auto gamma = [&](int a, int xa) -> Rat {
            if (xa == w) return has_bit(tau, a) ? Rat(1) : Rat(0);
            Mask dp = prefix_[static_cast<std::size_t>(xa)] & scope;
            Mask tp = tau & dp;
            const Rat& d2 = sol_->x(dp, tp);
            if (d2 == 0) throw std::logic_error("rounding: marginal vanished under a live branch");
            return sol_->x(dp | bit(a), tp | bit(a)) / d2;
        };
        Rat gu = gamma(u, xu), gv = gamma(v, xv);
        acc += (val / denom) * (gu * (1 - gv) + gv * (1 - gu));
    }
    return acc;
}

Rat Rounder::conditional_gamma(int k, Mask side) const {
    Rat acc(0);
    const Rat& lambda = sol_->opt_lp();
    for (const auto& e : inst_->supply)
        acc += e.w * separation_probability(e.u, e.v, k, side);
    for (const auto& e : inst_->demand)
        acc -= 2 * lambda * e.w * separation_probability(e.u, e.v, k, side);
    return acc;
}

Mask Rounder::sample(std::mt19937_64& rng) const {
    Mask side = 0;
    for (int y = 0; y < bag_count(); ++y) {
        Rat threshold = rat_unit_from_u64(rng());
        Rat cum(0);
        auto dist = bag_distribution(y, side);
        Mask pick = dist.back().first;
        for (auto& [a, p] : dist) {
            cum += p;
            if (threshold < cum) {
                pick = a;
                break;
            }
        }
        side |= pick;
    }
    return side;
}

RoundResult Rounder::finish(Mask side) const {
    RoundResult res;
    res.side = side;
    res.proper = side != 0 && side != bit(inst_->n) - 1;
    if (res.proper) res.phi = sparsity(*inst_, side);
    return res;
}

RoundResult Rounder::randomized(uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return finish(sample(rng));
}

RoundResult Rounder::derandomized() const {
    Mask side = 0;
    std::vector<DerandStep> trace;
    Rat initial = conditional_gamma(0, 0);
    if (initial > 0)
        throw std::logic_error("derandomization: expected potential positive before any choice");
    for (int y = 0; y < bag_count(); ++y) {
        auto dist = bag_distribution(y, side);
        bool have = false;
        Mask best_mask = 0;
        Rat best_gamma;
        for (auto& [a, p] : dist) {
            (void)p;
            Rat g = conditional_gamma(y + 1, side | a);
            if (!have || g < best_gamma) {
                have = true;
                best_mask = a;
                best_gamma = g;
            }
        }
        if (!have) throw std::logic_error("derandomization: empty bag distribution");
        if (best_gamma > 0)
            throw std::logic_error("derandomization: potential became positive at bag " +
                                   std::to_string(y));
        side |= best_mask;
        trace.push_back({y, best_mask, best_gamma});
    }
    RoundResult res = finish(side);
    res.initial_gamma = initial;
    res.trace = std::move(trace);
    return res;
}

std::map<Mask, Rat> Rounder::enumerate_distribution() const {
    long long log2_product = 0;
    for (Mask f : fresh_) log2_product += popcount(f);
    if (log2_product > 20)
        throw GuardError("rounding: outcome enumeration over 2^" + std::to_string(log2_product) +
                         " paths is disabled (limit 2^20)");
    std::map<Mask, Rat> out;
    struct Frame {
        Mask side;
        Rat prob;
    };
    // Depth-first over bags; only live branches are expanded.
    std::vector<std::pair<Frame, int>> stack{{Frame{0, Rat(1)}, 0}};
    while (!stack.empty()) {
        auto [frame, y] = stack.back();
        stack.pop_back();
        if (y == bag_count()) {
            out[frame.side] += frame.prob;
            continue;
        }
        for (auto& [a, p] : bag_distribution(y, frame.side))
            stack.push_back({Frame{frame.side | a, frame.prob * p}, y + 1});
    }
    return out;
}

} // namespace scut
