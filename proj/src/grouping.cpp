#include "scut/grouping.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace scut {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

int KLDecomposition::depth() const {
    int best = 0;
    for (const auto& p : root_path) best = std::max(best, static_cast<int>(p.size()) - 1);
    return best;
}

std::vector<std::vector<int>> KLDecomposition::children() const {
    std::vector<std::vector<int>> ch(bags.size());
    for (std::size_t i = 0; i < bags.size(); ++i)
        if (parent[i] >= 0) ch[parent[i]].push_back(static_cast<int>(i));
    return ch;
}

KLDecomposition build_kl_decomposition(const TreeDecomposition& td, int ell, int source_width) {
    if (ell < 2) throw std::runtime_error("grouping needs ell >= 2");
    if (!td.is_binary()) throw std::runtime_error("grouping needs a binary decomposition");

    const int b = static_cast<int>(td.bags.size());
    auto ch = td.children();
    std::vector<int> level(b, 0);
    {
        std::vector<int> stack{td.root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int c : ch[u]) {
                level[c] = level[u] + 1;
                stack.push_back(c);
            }
        }
    }

    if (source_width < 0) {
        int maxbag = 0;
        for (const auto& bag : td.bags) maxbag = std::max(maxbag, static_cast<int>(bag.size()));
        source_width = (maxbag + 2) / 3 - 1; // smallest w with 3(w+1) >= maxbag
    }

    const int stride = ell - 1;
    KLDecomposition kd;
    kd.ell = ell;
    kd.source_width = source_width;

    // One grouped bag per anchor (an input bag on a multiple-of-stride
    // level): the union of the anchor's subtree restricted to the next
    // ell-1 levels. BFS over anchors numbers the output.
    std::vector<int> kl_id(b, -1);
    std::deque<int> queue{td.root};
    kl_id[td.root] = 0;
    kd.bags.emplace_back();
    kd.parent.push_back(-1);
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        // walk the stratum below anchor x, collecting nodes and child anchors
        std::vector<int> nodes = td.bags[x];
        std::vector<int> next_anchors;
        std::vector<int> stack{x};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int c : ch[u]) {
                if (level[c] == level[x] + stride) {
                    next_anchors.push_back(c);
                    nodes = sorted_union(nodes, td.bags[c]); // shared anchor level
                } else {
                    nodes = sorted_union(nodes, td.bags[c]);
                    stack.push_back(c);
                }
            }
        }
        kd.bags[kl_id[x]] = std::move(nodes);
        std::sort(next_anchors.begin(), next_anchors.end());
        for (int a : next_anchors) {
            kl_id[a] = static_cast<int>(kd.bags.size());
            kd.bags.emplace_back();
            kd.parent.push_back(kl_id[x]);
            queue.push_back(a);
        }
    }

    const int m = static_cast<int>(kd.bags.size());
    kd.adhesion.resize(m);
    kd.root_path.resize(m);
    kd.prefix.resize(m);
    for (int i = 0; i < m; ++i) { // BFS order: parents precede children
        if (kd.parent[i] < 0) {
            kd.root_path[i] = {i};
            continue;
        }
        int p = kd.parent[i];
        kd.adhesion[i] = sorted_intersection(kd.bags[i], kd.bags[p]);
        kd.root_path[i] = kd.root_path[p];
        kd.root_path[i].insert(kd.root_path[i].begin(), i);
        kd.prefix[i] = sorted_union(kd.prefix[p], kd.adhesion[i]);
    }
    return kd;
}

int GroundSetFamily::id_for(int y, int z) const {
    auto it = pair_index.find({std::min(y, z), std::max(y, z)});
    if (it == pair_index.end()) throw std::runtime_error("no ground set for that bag pair");
    return it->second;
}

GroundSetFamily build_ground_sets(const KLDecomposition& kd) {
    const int m = static_cast<int>(kd.bags.size());
    std::vector<std::vector<int>> scope(m); // bag ∪ prefix
    for (int i = 0; i < m; ++i) scope[i] = sorted_union(kd.bags[i], kd.prefix[i]);

    GroundSetFamily fam;
    std::map<std::vector<int>, int> seen;
    std::vector<std::pair<std::pair<int, int>, std::vector<int>>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) pairs.push_back({{i, j}, sorted_union(scope[i], scope[j])});

    // lexicographic ids keep the family independent of pair order
    for (const auto& [key, set] : pairs) seen.emplace(set, 0);
    int next = 0;
    for (auto& [set, id] : seen) id = next++;
    fam.ground_sets.resize(seen.size());
    for (const auto& [set, id] : seen) fam.ground_sets[id] = set;
    for (const auto& [key, set] : pairs) fam.pair_index[key] = seen.at(set);
    return fam;
}

} // namespace scut
