#include "scut/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
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

int TreeDecomposition::width() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
    std::vector<std::vector<int>> ch(bags.size());
    for (std::size_t i = 0; i < bags.size(); ++i)
        if (parent[i] >= 0) ch[parent[i]].push_back(static_cast<int>(i));
    return ch;
}

int TreeDecomposition::depth() const {
    auto ch = children();
    int best = 0;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [u, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        for (int c : ch[u]) stack.push_back({c, d + 1});
    }
    return best;
}

bool TreeDecomposition::is_binary() const {
    for (const auto& c : children())
        if (c.size() > 2) return false;
    return true;
}

TdValidation validate_tree_decomposition(const Instance& g, const TreeDecomposition& td) {
    TdValidation r;
    const int b = static_cast<int>(td.bags.size());

    // tree structure before anything else
    if (b == 0 || static_cast<int>(td.parent.size()) != b || td.root < 0 || td.root >= b ||
        td.parent[td.root] != -1) {
        r.violation = "structure: malformed root or parent array";
        return r;
    }
    for (int i = 0; i < b; ++i) {
        if (i != td.root && (td.parent[i] < 0 || td.parent[i] >= b || td.parent[i] == i)) {
            r.violation = "structure: bag " + std::to_string(i) + " has an invalid parent";
            return r;
        }
    }
    auto ch = td.children();
    std::vector<char> seen(b, 0);
    std::vector<int> stack{td.root};
    seen[td.root] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int c : ch[u]) {
            if (seen[c]) {
                r.violation = "structure: cycle through bag " + std::to_string(c);
                return r;
            }
            seen[c] = 1;
            ++reached;
            stack.push_back(c);
        }
    }
    if (reached != b) {
        r.violation = "structure: parent links do not reach every bag";
        return r;
    }

    for (int i = 0; i < b; ++i) {
        if (!std::is_sorted(td.bags[i].begin(), td.bags[i].end()) ||
            std::adjacent_find(td.bags[i].begin(), td.bags[i].end()) != td.bags[i].end()) {
            r.violation = "structure: bag " + std::to_string(i) + " is not a sorted set";
            return r;
        }
        for (int v : td.bags[i])
            if (v < 0 || v >= g.n) {
                r.violation = "structure: bag " + std::to_string(i) + " contains invalid node " +
                              std::to_string(v);
                return r;
            }
    }

    std::vector<std::vector<int>> holding(g.n); // bags containing each node
    for (int i = 0; i < b; ++i)
        for (int v : td.bags[i]) holding[v].push_back(i);

    for (int v = 0; v < g.n; ++v)
        if (holding[v].empty()) {
            r.violation = "axiom 1: node " + std::to_string(v) + " is in no bag";
            return r;
        }

    for (const auto& e : g.supply) {
        bool covered = false;
        for (int i : holding[e.u])
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), e.v)) {
                covered = true;
                break;
            }
        if (!covered) {
            r.violation = "axiom 2: supply edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") is inside no bag";
            return r;
        }
    }

    for (int v = 0; v < g.n; ++v) {
        // bags holding v must form a connected subtree
        std::set<int> left(holding[v].begin(), holding[v].end());
        std::vector<int> work{*left.begin()};
        left.erase(left.begin());
        while (!work.empty() && !left.empty()) {
            int u = work.back();
            work.pop_back();
            std::vector<int> nbrs = ch[u];
            if (td.parent[u] >= 0) nbrs.push_back(td.parent[u]);
            for (int w : nbrs)
                if (left.erase(w)) work.push_back(w);
        }
        if (!left.empty()) {
            r.violation = "axiom 3: bags holding node " + std::to_string(v) +
                          " are not connected in the tree";
            return r;
        }
    }

    r.ok = true;
    r.width = td.width();
    return r;
}

TreeDecomposition heuristic_tree_decomposition(const Instance& g) {
    if (!g.supply_connected()) throw std::runtime_error("supply graph must be connected");
    const int n = g.n;
    std::vector<std::set<int>> adj(n);
    for (const auto& e : g.supply) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }

    auto fill_cost = [&](int v) {
        long cost = 0;
        for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
            for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                if (!adj[*it].count(*jt)) ++cost;
        return cost;
    };

    std::vector<int> order(n, -1), pos(n, -1);
    std::vector<std::vector<int>> elim_nbrs(n);
    std::vector<char> alive(n, 1);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = 0, best_deg = 0;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            long f = fill_cost(v), d = static_cast<long>(adj[v].size());
            if (best < 0 || std::tie(f, d, v) < std::tie(best_fill, best_deg, best)) {
                best = v;
                best_fill = f;
                best_deg = d;
            }
        }
        order[step] = best;
        pos[best] = step;
        elim_nbrs[best].assign(adj[best].begin(), adj[best].end());
        for (int a : elim_nbrs[best])
            for (int c : elim_nbrs[best])
                if (a < c) {
                    adj[a].insert(c);
                    adj[c].insert(a);
                }
        for (int a : elim_nbrs[best]) adj[a].erase(best);
        adj[best].clear();
        alive[best] = 0;
    }

    TreeDecomposition td;
    td.bags.resize(n);
    td.parent.assign(n, -1);
    std::vector<int> bag_of(n); // bag index of each eliminated node
    for (int step = 0; step < n; ++step) {
        int v = order[step];
        bag_of[v] = step;
        td.bags[step] = elim_nbrs[v];
        td.bags[step].push_back(v);
        std::sort(td.bags[step].begin(), td.bags[step].end());
    }
    for (int step = 0; step < n; ++step) {
        int v = order[step];
        int next = -1;
        for (int u : elim_nbrs[v])
            if (next < 0 || pos[u] < pos[next]) next = u;
        td.parent[step] = (next >= 0) ? bag_of[next] : -1;
    }
    td.root = bag_of[order[n - 1]];

    // absorb bags that are subsets of a tree neighbor
    bool changed = true;
    std::vector<char> dead(n, 0);
    while (changed) {
        changed = false;
        for (int c = 0; c < n && !changed; ++c) {
            if (dead[c] || td.parent[c] < 0) continue;
            int p = td.parent[c];
            const auto& cb = td.bags[c];
            const auto& pb = td.bags[p];
            if (std::includes(pb.begin(), pb.end(), cb.begin(), cb.end())) {
                // child vanishes; its children move up
                for (int i = 0; i < n; ++i)
                    if (!dead[i] && td.parent[i] == c) td.parent[i] = p;
                dead[c] = 1;
                changed = true;
            } else if (std::includes(cb.begin(), cb.end(), pb.begin(), pb.end())) {
                // child replaces its parent
                for (int i = 0; i < n; ++i)
                    if (!dead[i] && i != c && td.parent[i] == p) td.parent[i] = c;
                td.parent[c] = td.parent[p];
                if (td.root == p) td.root = c;
                dead[p] = 1;
                changed = true;
            }
        }
    }

    TreeDecomposition out;
    std::vector<int> remap(n, -1);
    for (int i = 0; i < n; ++i)
        if (!dead[i]) {
            remap[i] = static_cast<int>(out.bags.size());
            out.bags.push_back(td.bags[i]);
        }
    for (int i = 0; i < n; ++i)
        if (!dead[i]) out.parent.push_back(td.parent[i] < 0 ? -1 : remap[td.parent[i]]);
    out.root = remap[td.root];
    return out;
}

namespace {

// Rebuilds a decomposition tree into a binary one of logarithmic depth.
// Recursive pieces carry at most two boundary adhesions; a piece with two
// splits on the host-to-host path (both remainders halve), a piece with at
// most one splits at its centroid. Children hang below the new root through
// a Kraft-packed tree of root copies, so deep subtrees sit near the top.
class Balancer {
  public:
    explicit Balancer(const TreeDecomposition& td) : in_(td), adj_(td.bags.size()) {
        for (std::size_t i = 0; i < td.bags.size(); ++i)
            if (td.parent[i] >= 0) {
                adj_[i].push_back(td.parent[i]);
                adj_[td.parent[i]].push_back(static_cast<int>(i));
            }
        in_piece_.assign(td.bags.size(), 0);
    }

    TreeDecomposition run() {
        std::vector<int> all(in_.bags.size());
        std::iota(all.begin(), all.end(), 0);
        out_.root = rebuild(all, {}).first;
        return std::move(out_);
    }

  private:
    struct Boundary {
        int host;                  // bag inside the piece the cut edge touched
        std::vector<int> adhesion; // nodes shared across that edge
    };
    struct Item {
        int d;    // target edge depth below the current connector
        int root; // rebuilt child root bag
    };

    const TreeDecomposition& in_;
    std::vector<std::vector<int>> adj_;
    std::vector<char> in_piece_;
    TreeDecomposition out_;

    int new_bag(std::vector<int> nodes, int parent) {
        out_.bags.push_back(std::move(nodes));
        out_.parent.push_back(parent);
        return static_cast<int>(out_.bags.size()) - 1;
    }

    // subtree sizes of the piece rooted at r; parents alongside
    void sizes_from(int r, std::vector<int>& sz, std::vector<int>& par) const {
        std::vector<int> stack{r}, post;
        par[r] = -2;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            post.push_back(u);
            for (int v : adj_[u])
                if (in_piece_[v] && par[v] == -1) {
                    par[v] = u;
                    stack.push_back(v);
                }
        }
        for (auto it = post.rbegin(); it != post.rend(); ++it) {
            sz[*it] = 1;
            for (int v : adj_[*it])
                if (in_piece_[v] && par[v] == *it) sz[*it] += sz[v];
        }
    }

    int pick_centroid(const std::vector<int>& members) const {
        std::vector<int> sz(in_.bags.size(), 0), par(in_.bags.size(), -1);
        sizes_from(members[0], sz, par);
        const int total = static_cast<int>(members.size());
        int best = -1, best_cost = 0;
        for (int v : members) {
            int cost = total - sz[v];
            for (int u : adj_[v])
                if (in_piece_[u] && par[u] == v) cost = std::max(cost, sz[u]);
            if (best < 0 || cost < best_cost || (cost == best_cost && v < best)) {
                best = v;
                best_cost = cost;
            }
        }
        return best;
    }

    // split bag for a piece with two boundary hosts: walk the host-to-host
    // path and take the last bag whose near side stays below half
    int pick_path_split(const std::vector<int>& members, int h1, int h2) const {
        std::vector<int> sz(in_.bags.size(), 0), par(in_.bags.size(), -1);
        sizes_from(h1, sz, par);
        std::vector<int> path;
        for (int v = h2; v != -2; v = par[v]) path.push_back(v);
        std::reverse(path.begin(), path.end()); // now h1 ... h2
        const int total = static_cast<int>(members.size());
        int split = path[0];
        for (int i = 0; i < static_cast<int>(path.size()); ++i) {
            int near_side = total - sz[path[i]]; // bags on the h1 side of path[i]
            if (near_side <= (total - 1) / 2) split = path[i];
        }
        return split;
    }

    // minimal total depth M allowing every child at edge depth M - need_j
    // below the root while the depths satisfy the Kraft inequality
    static int connector_depth(const std::vector<int>& needs) {
        int M = 0;
        for (int nd : needs) M = std::max(M, nd + 1);
        for (;; ++M) {
            if (M > 62) throw std::logic_error("connector depth out of range");
            uint64_t sum = 0;
            bool ok = true;
            for (int nd : needs) {
                sum += uint64_t{1} << (62 - (M - nd));
                if (sum > (uint64_t{1} << 62)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return M;
        }
    }

    // places items below `parent` at their exact target depths; connector
    // bags are copies of the root's node set
    void pack(int parent, std::vector<Item> items, const std::vector<int>& root_nodes) {
        if (items.size() == 1 && items[0].d == 1) {
            out_.parent[items[0].root] = parent;
            return;
        }
        std::stable_sort(items.begin(), items.end(),
                         [](const Item& a, const Item& b) { return a.d < b.d; });
        const uint64_t half = uint64_t{1} << 61;
        uint64_t taken = 0;
        std::vector<Item> left, right;
        for (const Item& it : items) {
            uint64_t v = uint64_t{1} << (62 - it.d);
            if (taken + v <= half) {
                taken += v;
                left.push_back(it);
            } else {
                right.push_back(it);
            }
        }
        for (auto* side : {&left, &right}) {
            if (side->empty()) continue;
            if (side->size() == 1 && (*side)[0].d == 1) {
                out_.parent[(*side)[0].root] = parent;
                continue;
            }
            int conn = new_bag(root_nodes, parent);
            for (Item& it : *side) --it.d;
            pack(conn, *side, root_nodes);
        }
    }

    // returns (root bag id in out_, rebuilt depth)
    std::pair<int, int> rebuild(const std::vector<int>& members, std::vector<Boundary> bounds) {
        for (int v : members) in_piece_[v] = 1;

        int split;
        if (members.size() == 1)
            split = members[0];
        else if (bounds.size() == 2)
            split = (bounds[0].host != bounds[1].host)
                        ? pick_path_split(members, bounds[0].host, bounds[1].host)
                        : bounds[0].host;
        else
            split = pick_centroid(members);

        // components of the piece once split is removed, each with its
        // adhesion toward split and any inherited boundary
        std::vector<std::vector<int>> comps;
        std::vector<int> entry; // neighbor bag the component hangs from
        in_piece_[split] = 0;
        for (int nb : adj_[split]) {
            if (!in_piece_[nb]) continue;
            std::vector<int> comp, stack{nb};
            in_piece_[nb] = 0;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                comp.push_back(u);
                for (int w : adj_[u])
                    if (in_piece_[w]) {
                        in_piece_[w] = 0;
                        stack.push_back(w);
                    }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
            entry.push_back(nb);
        }

        std::vector<int> root_nodes = in_.bags[split];
        for (const auto& b : bounds) root_nodes = sorted_union(root_nodes, b.adhesion);

        std::vector<Item> items;
        std::vector<int> needs;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            std::vector<Boundary> child_bounds;
            child_bounds.push_back(
                {entry[c], sorted_intersection(in_.bags[split], in_.bags[entry[c]])});
            for (const auto& b : bounds)
                if (b.host != split &&
                    std::binary_search(comps[c].begin(), comps[c].end(), b.host))
                    child_bounds.push_back(b);
            auto [croot, cdepth] = rebuild(comps[c], std::move(child_bounds));
            items.push_back({0, croot});
            needs.push_back(cdepth);
        }

        int root_id = new_bag(root_nodes, -1);
        if (items.empty()) return {root_id, 0};
        int M = connector_depth(needs);
        for (std::size_t i = 0; i < items.size(); ++i) items[i].d = M - needs[i];
        pack(root_id, std::move(items), root_nodes);
        return {root_id, M};
    }
};

} // namespace

TreeDecomposition balance_tree_decomposition(const TreeDecomposition& td) {
    const int b = static_cast<int>(td.bags.size());
    if (b == 0 || static_cast<int>(td.parent.size()) != b || td.root < 0 || td.root >= b)
        throw std::runtime_error("balance: malformed decomposition");
    if (b == 1) {
        TreeDecomposition copy = td;
        return copy;
    }
    return Balancer(td).run();
}

TreeDecomposition parse_td(const std::string& text, int expected_n) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw std::runtime_error("td line " + std::to_string(line_no) + ": " + what);
    };

    bool have_header = false;
    int nbags = 0, width_p1 = 0, nverts = 0, root_id = 1;
    bool root_overridden = false;
    std::vector<std::vector<int>> bags;
    std::vector<char> defined;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") {
            std::string key;
            if (ls >> key && key == "root") {
                if (!(ls >> root_id)) fail("c root needs a bag id");
                root_overridden = true;
            }
            continue;
        }
        if (head == "s") {
            std::string kind;
            if (have_header) fail("duplicate header");
            if (!(ls >> kind >> nbags >> width_p1 >> nverts) || kind != "td")
                fail("header must be 's td <bags> <width+1> <n>'");
            if (nbags < 1) fail("need at least one bag");
            bags.assign(nbags, {});
            defined.assign(nbags, 0);
            have_header = true;
            continue;
        }
        if (head == "b") {
            if (!have_header) fail("bag before header");
            int id;
            if (!(ls >> id)) fail("bag needs an id");
            if (id < 1 || id > nbags) fail("bag id out of range");
            if (defined[id - 1]) fail("duplicate bag " + std::to_string(id));
            defined[id - 1] = 1;
            int v;
            while (ls >> v) {
                if (v < 1 || (expected_n >= 0 && v > expected_n) || v > nverts)
                    fail("node out of range in bag " + std::to_string(id));
                bags[id - 1].push_back(v - 1);
            }
            std::sort(bags[id - 1].begin(), bags[id - 1].end());
            if (std::adjacent_find(bags[id - 1].begin(), bags[id - 1].end()) !=
                bags[id - 1].end())
                fail("repeated node in bag " + std::to_string(id));
            continue;
        }
        // anything else must be a tree edge "<id1> <id2>"
        if (!have_header) fail("edge before header");
        int a, bb;
        std::istringstream es(line);
        if (!(es >> a >> bb)) fail("expected tree edge '<id1> <id2>'");
        std::string extra;
        if (es >> extra) fail("trailing token '" + extra + "'");
        if (a < 1 || a > nbags || bb < 1 || bb > nbags || a == bb) fail("bad tree edge");
        edges.push_back({a - 1, bb - 1});
    }
    if (!have_header) fail("missing header");
    for (int i = 0; i < nbags; ++i)
        if (!defined[i]) fail("bag " + std::to_string(i + 1) + " missing");
    if (expected_n >= 0 && nverts != expected_n)
        fail("header names " + std::to_string(nverts) + " vertices, instance has " +
             std::to_string(expected_n));
    int maxbag = 0;
    for (const auto& b : bags) maxbag = std::max(maxbag, static_cast<int>(b.size()));
    if (maxbag != width_p1) fail("header width+1 does not match the largest bag");
    if (static_cast<int>(edges.size()) != nbags - 1) fail("tree needs exactly bags-1 edges");
    if (root_overridden && (root_id < 1 || root_id > nbags)) fail("c root id out of range");

    TreeDecomposition td;
    td.bags = std::move(bags);
    td.parent.assign(nbags, -1);
    td.root = root_id - 1;
    std::vector<std::vector<int>> adj(nbags);
    for (auto [a, bb] : edges) {
        adj[a].push_back(bb);
        adj[bb].push_back(a);
    }
    std::vector<char> seen(nbags, 0);
    std::vector<int> stack{td.root};
    seen[td.root] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                td.parent[v] = u;
                ++reached;
                stack.push_back(v);
            }
    }
    if (reached != nbags) fail("tree edges do not connect all bags");
    return td;
}

TreeDecomposition load_td(const std::string& path, int expected_n) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_td(buf.str(), expected_n);
}

std::string serialize_td(const TreeDecomposition& td, int n) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    out << "c root " << td.root + 1 << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        if (td.parent[i] >= 0) out << td.parent[i] + 1 << ' ' << i + 1 << '\n';
    return out.str();
}

} // namespace scut
