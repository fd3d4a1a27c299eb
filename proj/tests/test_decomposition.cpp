#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "scut/decomposition.hpp"
#include "scut/grouping.hpp"
#include "test_util.hpp"

using namespace scut;
using namespace scut::testutil;

namespace {

TreeDecomposition make_td(std::vector<std::vector<int>> bags, std::vector<int> parent, int root) {
    TreeDecomposition td;
    td.bags = std::move(bags);
    td.parent = std::move(parent);
    td.root = root;
    return td;
}

Instance cycle_instance(int n) {
    std::string text = "p sc " + std::to_string(n) + " " + std::to_string(n) + " 1\n";
    for (int i = 0; i < n; ++i)
        text += "s " + std::to_string(i) + " " + std::to_string((i + 1) % n) + " 1\n";
    text += "d 0 " + std::to_string(n / 2) + " 1\n";
    return parse_instance(text);
}

bool supply_is_forest(const Instance& g) {
    // union-find cycle check, independent of any decomposition code
    std::vector<int> up(g.n);
    for (int i = 0; i < g.n; ++i) up[i] = i;
    auto find = [&](int v) {
        while (up[v] != v) v = up[v] = up[up[v]];
        return v;
    };
    for (const auto& e : g.supply) {
        int a = find(e.u), b = find(e.v);
        if (a == b) return false;
        up[a] = b;
    }
    return true;
}

// Grows a valid decomposition by duplicating bags and hanging subset leaves;
// keeps validity and never increases width.
TreeDecomposition bloat(TreeDecomposition td, uint64_t seed, int target_bags) {
    std::mt19937_64 rng(seed);
    while (static_cast<int>(td.bags.size()) < target_bags) {
        int i = static_cast<int>(rng() % td.bags.size());
        int op = static_cast<int>(rng() % 3);
        if (op == 0) { // duplicate as leaf child
            td.bags.push_back(td.bags[i]);
            td.parent.push_back(i);
        } else if (op == 1) { // interpose a copy between i and its parent
            if (td.parent[i] < 0) continue;
            td.bags.push_back(td.bags[i]);
            td.parent.push_back(td.parent[i]);
            td.parent[i] = static_cast<int>(td.bags.size()) - 1;
        } else { // random subset leaf
            std::vector<int> sub;
            for (int v : td.bags[i])
                if (rng() % 2) sub.push_back(v);
            td.bags.push_back(sub);
            td.parent.push_back(i);
        }
    }
    return td;
}

std::set<int> all_nodes(const std::vector<std::vector<int>>& bags) {
    std::set<int> s;
    for (const auto& b : bags) s.insert(b.begin(), b.end());
    return s;
}

void check_balance_contract(const Instance& inst, const TreeDecomposition& input) {
    const int b = static_cast<int>(input.bags.size());
    const int w = input.width();
    TreeDecomposition bal = balance_tree_decomposition(input);
    auto v = validate_tree_decomposition(inst, bal);
    CAPTURE(v.violation);
    REQUIRE(v.ok);
    CHECK(bal.is_binary());
    CHECK(bal.width() + 1 <= 3 * (w + 1));
    int bound = 2 * static_cast<int>(std::ceil(std::log2(b + 1))) + 1;
    CHECK(bal.depth() <= bound);
}

} // namespace

TEST_CASE("validation accepts canonical decompositions") {
    Instance tri = inst_from("p sc 3 3 1\ns 0 1 1\ns 1 2 1\ns 0 2 1\nd 0 1 1\n");
    auto r = validate_tree_decomposition(tri, make_td({{0, 1, 2}}, {-1}, 0));
    REQUIRE(r.ok);
    CHECK(r.width == 2);

    auto p = validate_tree_decomposition(path3(), make_td({{0, 1}, {1, 2}}, {-1, 0}, 0));
    REQUIRE(p.ok);
    CHECK(p.width == 1);
}

TEST_CASE("validation reports each axiom with a witness") {
    Instance chord = inst_from("p sc 3 3 1\ns 0 1 1\ns 1 2 1\ns 0 2 1\nd 0 2 1\n");
    auto r2 = validate_tree_decomposition(chord, make_td({{0, 1}, {1, 2}}, {-1, 0}, 0));
    CHECK_FALSE(r2.ok);
    CHECK(r2.violation.find("axiom 2") != std::string::npos);
    CHECK(r2.violation.find("(0,2)") != std::string::npos);

    Instance p4 = inst_from("p sc 4 3 1\ns 0 1 1\ns 1 2 1\ns 2 3 1\nd 0 3 1\n");
    auto r1 = validate_tree_decomposition(p4, make_td({{0, 1}, {1, 2}}, {-1, 0}, 0));
    CHECK_FALSE(r1.ok);
    CHECK(r1.violation.find("axiom 1") != std::string::npos);

    // node 0 in two bags that are not adjacent
    auto r3 = validate_tree_decomposition(
        p4, make_td({{0, 1}, {1, 2}, {0, 2, 3}}, {-1, 0, 1}, 0));
    CHECK_FALSE(r3.ok);
    CHECK(r3.violation.find("axiom 3") != std::string::npos);
}

TEST_CASE("validation reports structural damage") {
    Instance p = path3();
    auto bad_root = validate_tree_decomposition(p, make_td({{0, 1}, {1, 2}}, {0, 0}, 0));
    CHECK_FALSE(bad_root.ok);
    CHECK(bad_root.violation.find("structure") != std::string::npos);

    auto unsorted = validate_tree_decomposition(p, make_td({{1, 0, 2}}, {-1}, 0));
    CHECK_FALSE(unsorted.ok);
    CHECK(unsorted.violation.find("sorted") != std::string::npos);

    auto range = validate_tree_decomposition(p, make_td({{0, 1, 7}}, {-1}, 0));
    CHECK_FALSE(range.ok);
    CHECK(range.violation.find("invalid node") != std::string::npos);
}

TEST_CASE("min-fill width on known families") {
    // trees have width 1
    Instance tree = random_instance(7, 9, /*extra_chords=*/0, /*demands=*/2);
    TreeDecomposition td = heuristic_tree_decomposition(tree);
    CHECK(validate_tree_decomposition(tree, td).ok);
    CHECK(td.width() == 1);
    CHECK(supply_is_forest(tree));

    for (int n = 4; n <= 8; ++n) {
        Instance cyc = cycle_instance(n);
        TreeDecomposition c = heuristic_tree_decomposition(cyc);
        CHECK(validate_tree_decomposition(cyc, c).ok);
        CHECK(c.width() == 2);
        CHECK_FALSE(supply_is_forest(cyc)); // so width 2 is optimal
    }

    Instance k4 = inst_from(
        "p sc 4 6 1\n"
        "s 0 1 1\ns 0 2 1\ns 0 3 1\ns 1 2 1\ns 1 3 1\ns 2 3 1\n"
        "d 0 1 1\n");
    TreeDecomposition k = heuristic_tree_decomposition(k4);
    CHECK(validate_tree_decomposition(k4, k).ok);
    CHECK(k.width() == 3);

    Instance split = inst_from("p sc 4 2 1\ns 0 1 1\ns 2 3 1\nd 0 3 1\n");
    CHECK_THROWS_AS(heuristic_tree_decomposition(split), std::runtime_error);
}

TEST_CASE("min-fill output is valid on random instances") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = random_instance(seed, 6 + static_cast<int>(seed % 7), 3, 3);
        TreeDecomposition td = heuristic_tree_decomposition(inst);
        auto r = validate_tree_decomposition(inst, td);
        CAPTURE(seed);
        CAPTURE(r.violation);
        CHECK(r.ok);
    }
}

TEST_CASE("balance keeps a single bag untouched") {
    Instance tri = inst_from("p sc 3 3 1\ns 0 1 1\ns 1 2 1\ns 0 2 1\nd 0 1 1\n");
    TreeDecomposition td = make_td({{0, 1, 2}}, {-1}, 0);
    TreeDecomposition bal = balance_tree_decomposition(td);
    CHECK(bal.bags == td.bags);
    CHECK(bal.depth() == 0);
}

TEST_CASE("balance on an 8-bag path decomposition") {
    // P_9: bags {i,i+1} in a chain
    std::vector<std::vector<int>> bags;
    std::vector<int> parent;
    for (int i = 0; i < 8; ++i) {
        bags.push_back({i, i + 1});
        parent.push_back(i - 1);
    }
    TreeDecomposition td = make_td(bags, parent, 0);
    std::string text = "p sc 9 8 1\n";
    for (int i = 0; i < 8; ++i)
        text += "s " + std::to_string(i) + " " + std::to_string(i + 1) + " 1\n";
    text += "d 0 8 1\n";
    Instance p9 = parse_instance(text);
    REQUIRE(validate_tree_decomposition(p9, td).ok);

    TreeDecomposition bal = balance_tree_decomposition(td);
    auto v = validate_tree_decomposition(p9, bal);
    CAPTURE(v.violation);
    REQUIRE(v.ok);
    CHECK(bal.is_binary());
    CHECK(bal.depth() <= 7);
    CHECK(bal.width() + 1 <= 6);
}

TEST_CASE("balance contract on random decompositions") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = random_instance(seed * 31, 6 + static_cast<int>(seed % 8), 3, 2);
        TreeDecomposition base = heuristic_tree_decomposition(inst);
        TreeDecomposition fat = bloat(base, seed, 8 + static_cast<int>(seed % 50));
        REQUIRE(validate_tree_decomposition(inst, fat).ok);
        check_balance_contract(inst, fat);

        // the contract keeps holding when balancing the balanced tree
        TreeDecomposition bal = balance_tree_decomposition(fat);
        check_balance_contract(inst, bal);
    }
}

TEST_CASE("grouping a 31-bag complete binary decomposition, ell = 3") {
    std::vector<std::vector<int>> bags;
    std::vector<int> parent;
    for (int i = 0; i < 31; ++i) {
        bags.push_back({i});
        parent.push_back(i == 0 ? -1 : (i - 1) / 2);
    }
    TreeDecomposition td = make_td(bags, parent, 0);
    KLDecomposition kd = build_kl_decomposition(td, 3);

    REQUIRE(kd.bags.size() == 21); // anchors at levels 0, 2, 4
    std::vector<int> levels02{0, 1, 2, 3, 4, 5, 6};
    CHECK(kd.bags[0] == levels02);
    // BFS: anchors 3,4,5,6 become bags 1..4
    CHECK(kd.bags[1] == std::vector<int>{3, 7, 8, 15, 16, 17, 18});
    CHECK(kd.adhesion[1] == std::vector<int>{3});
    CHECK(kd.prefix[1] == std::vector<int>{3});
    // leaf stratum: bag {15} hangs under anchor 3
    CHECK(kd.bags[5] == std::vector<int>{15});
    CHECK(kd.prefix[5] == std::vector<int>{3, 15});
    CHECK(kd.depth() == 2);
    CHECK(kd.root_path[5] == std::vector<int>{5, 1, 0});
}

TEST_CASE("grouping degenerates to one bag when the tree is shallow") {
    TreeDecomposition td = make_td({{0, 1}, {1, 2}}, {-1, 0}, 0);
    KLDecomposition kd = build_kl_decomposition(td, 3); // depth 1 <= ell-1
    REQUIRE(kd.bags.size() == 1);
    CHECK(kd.bags[0] == std::vector<int>{0, 1, 2});
    CHECK(kd.adhesion[0].empty());
    CHECK(kd.prefix[0].empty());
}

TEST_CASE("grouping rejects bad parameters") {
    TreeDecomposition td = make_td({{0, 1}}, {-1}, 0);
    CHECK_THROWS_AS(build_kl_decomposition(td, 1), std::runtime_error);
    TreeDecomposition wide =
        make_td({{0}, {0, 1}, {0, 2}, {0, 3}}, {-1, 0, 0, 0}, 0); // ternary root
    CHECK_THROWS_AS(build_kl_decomposition(wide, 2), std::runtime_error);
}

TEST_CASE("grouping invariants on random decompositions") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed * 17 + 1, 6 + static_cast<int>(seed % 8), 2, 2);
        TreeDecomposition fat =
            bloat(heuristic_tree_decomposition(inst), seed, 6 + static_cast<int>(seed % 40));
        TreeDecomposition bal = balance_tree_decomposition(fat);
        for (int ell : {2, 3}) {
            KLDecomposition kd = build_kl_decomposition(bal, ell);

            // still a valid decomposition of the same graph
            TreeDecomposition as_td = make_td(kd.bags, kd.parent, 0);
            auto v = validate_tree_decomposition(inst, as_td);
            CAPTURE(seed);
            CAPTURE(ell);
            CAPTURE(v.violation);
            REQUIRE(v.ok);
            CHECK(all_nodes(kd.bags) == all_nodes(bal.bags));
            CHECK(kd.depth() <= (bal.depth() + ell - 2) / (ell - 1));

            const int w = kd.source_width;
            CHECK(kd.adhesion[0].empty());
            CHECK(kd.prefix[0].empty());
            for (std::size_t i = 0; i < kd.bags.size(); ++i) {
                CHECK(static_cast<int>(kd.bags[i].size()) <= (1 << ell) * 3 * (w + 1));
                CHECK(static_cast<int>(kd.adhesion[i].size()) <= 3 * w + 3);
                if (kd.parent[i] < 0) continue;
                const auto& mu = kd.bags[kd.parent[i]];
                // J = Y ∩ mu(Y), and prefix meets Y only inside mu(Y)
                std::vector<int> inter;
                std::set_intersection(kd.bags[i].begin(), kd.bags[i].end(), mu.begin(),
                                      mu.end(), std::back_inserter(inter));
                CHECK(kd.adhesion[i] == inter);
                std::vector<int> py;
                std::set_intersection(kd.prefix[i].begin(), kd.prefix[i].end(),
                                      kd.bags[i].begin(), kd.bags[i].end(),
                                      std::back_inserter(py));
                CHECK(py == kd.adhesion[i]); // so Y \ prefix == Y \ mu(Y)
            }
        }
    }
}

TEST_CASE("ground sets of a hand-built two-bag decomposition") {
    KLDecomposition kd;
    kd.bags = {{0, 1, 2}, {1, 2, 3}};
    kd.parent = {-1, 0};
    kd.adhesion = {{}, {1, 2}};
    kd.root_path = {{0}, {1, 0}};
    kd.prefix = {{}, {1, 2}};
    GroundSetFamily fam = build_ground_sets(kd);
    REQUIRE(fam.ground_sets.size() == 3);
    CHECK(fam.ground_sets[0] == std::vector<int>{0, 1, 2});
    CHECK(fam.ground_sets[1] == std::vector<int>{0, 1, 2, 3});
    CHECK(fam.ground_sets[2] == std::vector<int>{1, 2, 3});
    CHECK(fam.id_for(0, 0) == 0);
    CHECK(fam.id_for(0, 1) == 1);
    CHECK(fam.id_for(1, 0) == 1);
    CHECK(fam.id_for(1, 1) == 2);
    CHECK_THROWS_AS(fam.id_for(0, 5), std::runtime_error);
}

TEST_CASE("ground sets cover every node pair") {
    for (uint64_t seed = 3; seed <= 12; ++seed) {
        Instance inst = random_instance(seed * 101, 8, 2, 3);
        TreeDecomposition bal = balance_tree_decomposition(heuristic_tree_decomposition(inst));
        KLDecomposition kd = build_kl_decomposition(bal, 2);
        GroundSetFamily fam = build_ground_sets(kd);
        CHECK(fam.ground_sets.size() <=
              kd.bags.size() * (kd.bags.size() + 1) / 2);
        for (int u = 0; u < inst.n; ++u)
            for (int v = u + 1; v < inst.n; ++v) {
                bool covered = false;
                for (const auto& gs : fam.ground_sets)
                    if (std::binary_search(gs.begin(), gs.end(), u) &&
                        std::binary_search(gs.begin(), gs.end(), v)) {
                        covered = true;
                        break;
                    }
                CAPTURE(seed);
                CAPTURE(u);
                CAPTURE(v);
                CHECK(covered);
            }
    }
}

TEST_CASE("PACE td round-trip and root override") {
    const std::string text =
        "s td 3 2 4\n"
        "c root 2\n"
        "b 1 1 2\n"
        "b 2 2 3\n"
        "b 3 3 4\n"
        "1 2\n"
        "2 3\n";
    TreeDecomposition td = parse_td(text, 4);
    REQUIRE(td.bags.size() == 3);
    CHECK(td.root == 1);
    CHECK(td.bags[0] == std::vector<int>{0, 1}); // 0-based in memory
    CHECK(td.parent[0] == 1);
    CHECK(td.parent[1] == -1);
    CHECK(td.parent[2] == 1);

    TreeDecomposition again = parse_td(serialize_td(td, 4), 4);
    CHECK(again.bags == td.bags);
    CHECK(again.parent == td.parent);
    CHECK(again.root == td.root);
}

TEST_CASE("PACE td rejects malformed input") {
    auto rejects = [](const std::string& text, const std::string& needle) {
        try {
            parse_td(text, 4);
            FAIL_CHECK("accepted: " << text);
        } catch (const std::runtime_error& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
        }
    };
    rejects("b 1 1\n", "before header");
    rejects("s td 2 1 4\nb 1 1\nb 2 2\n", "exactly bags-1 edges");
    rejects("s td 2 1 4\nb 1 1\nb 1 2\n1 2\n", "duplicate bag");
    rejects("s td 2 1 4\nb 1 1\n1 2\n", "bag 2 missing");
    rejects("s td 1 1 4\nb 1 9\n", "out of range");
    rejects("s td 1 2 4\nb 1 1\n", "width+1");
    rejects("s td 2 1 5\nb 1 1\nb 2 2\n1 2\n", "instance has");
    rejects("s td 2 1 4\nc root 7\nb 1 1\nb 2 2\n1 2\n", "root id out of range");
    CHECK_THROWS_AS(load_td("/nonexistent/x.td"), std::runtime_error);
}
