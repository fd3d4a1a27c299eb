#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scut/simplex.hpp"

using namespace scut;

namespace {

DenseLp<Rat> lp_from(int nvars, std::vector<Rat> obj,
                     std::vector<std::vector<Rat>> rows, std::vector<Rat> rhs) {
    DenseLp<Rat> lp;
    lp.num_vars = nvars;
    lp.objective = std::move(obj);
    lp.rows = std::move(rows);
    lp.rhs = std::move(rhs);
    return lp;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Random equality-form program that is feasible by construction: b = A x*
// for a sparse nonnegative x*.
DenseLp<Rat> random_feasible(std::mt19937_64& rng, int n, int m, std::vector<Rat>& witness) {
    DenseLp<Rat> lp;
    lp.num_vars = n;
    witness.assign(static_cast<std::size_t>(n), Rat(0));
    for (int j = 0; j < n; ++j) {
        lp.objective.push_back(make_rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 3)));
        if (rng() % 2 == 0) witness[static_cast<std::size_t>(j)] = make_rat(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 4));
    }
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> row;
        for (int j = 0; j < n; ++j)
            row.push_back(make_rat(static_cast<long>(rng() % 11) - 5, 1));
        lp.rhs.push_back(dot(row, witness));
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

} // namespace

TEST_CASE("two variable optimum") {
    // min -x1 - 2 x2 st x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6
    auto lp = lp_from(4, {Rat(-1), Rat(-2), Rat(0), Rat(0)},
                      {{Rat(1), Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(3), Rat(0), Rat(1)}},
                      {Rat(4), Rat(6)});
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == Rat(-5));
    CHECK(r.solution[0] == Rat(3));
    CHECK(r.solution[1] == Rat(1));
}

TEST_CASE("beale cycling instance terminates under bland") {
    // min -3/4 a + 150 b - 1/50 c + 6 d with the three classic inequalities
    // turned into equalities by slacks; optimum is -1/20 at a = 1/25, c = 1.
    auto lp = lp_from(
        7,
        {make_rat(-3, 4), Rat(150), make_rat(-1, 50), Rat(6), Rat(0), Rat(0), Rat(0)},
        {{make_rat(1, 4), Rat(-60), make_rat(-1, 25), Rat(9), Rat(1), Rat(0), Rat(0)},
         {make_rat(1, 2), Rat(-90), make_rat(-1, 50), Rat(3), Rat(0), Rat(1), Rat(0)},
         {Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}},
        {Rat(0), Rat(0), Rat(1)});
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == make_rat(-1, 20));
    CHECK(r.solution[0] == make_rat(1, 25));
    CHECK(r.solution[2] == Rat(1));
    CHECK(r.pivots < 200);
}

TEST_CASE("infeasible and unbounded detection") {
    auto bad = lp_from(1, {Rat(0)}, {{Rat(1)}, {Rat(1)}}, {Rat(1), Rat(2)});
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);

    auto unb = lp_from(2, {Rat(-1), Rat(0)}, {{Rat(1), Rat(-1)}}, {Rat(0)});
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);

    auto empty_rows = lp_from(2, {Rat(-1), Rat(1)}, {}, {});
    CHECK(solve_lp(empty_rows).status == LpStatus::Unbounded);

    auto empty_opt = lp_from(2, {Rat(1), Rat(2)}, {}, {});
    auto r = solve_lp(empty_opt);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == Rat(0));
}

TEST_CASE("redundant duplicate rows are dropped") {
    auto lp = lp_from(3, {Rat(1), Rat(1), Rat(1)},
                      {{Rat(1), Rat(1), Rat(0)},
                       {Rat(1), Rat(1), Rat(0)},
                       {Rat(2), Rat(2), Rat(0)},
                       {Rat(0), Rat(1), Rat(1)}},
                      {Rat(2), Rat(2), Rat(4), Rat(3)});
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.active_rows.size() == 2);
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        CHECK(dot(lp.rows[i], r.solution) == lp.rhs[i]);
    CHECK(r.objective == Rat(3)); // x2 = 2 free of x3 cost... x = (0,2,1) costs 3
}

TEST_CASE("negative rhs rows are normalized") {
    // -x1 - x2 = -3 with x1 <= 2 (slack) forces x2 >= 1.
    auto lp = lp_from(3, {Rat(0), Rat(1), Rat(0)},
                      {{Rat(-1), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(1)}},
                      {Rat(-3), Rat(2)});
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == Rat(1));
}

TEST_CASE("random corpus: serial equals parallel and witness bounds optimum") {
    std::mt19937_64 rng(20260822);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rat> witness;
        int n = 4 + static_cast<int>(rng() % 6);
        int m = 2 + static_cast<int>(rng() % 3);
        auto lp = random_feasible(rng, n, m, witness);
        auto serial = solve_lp(lp, false);
        auto par = solve_lp(lp, true);
        REQUIRE(serial.status == par.status);
        if (serial.status != LpStatus::Optimal) continue;
        CHECK(serial.objective == par.objective);
        CHECK(serial.pivots == par.pivots);
        REQUIRE(serial.solution.size() == par.solution.size());
        for (std::size_t j = 0; j < serial.solution.size(); ++j)
            CHECK(serial.solution[j] == par.solution[j]);
        for (std::size_t i = 0; i < lp.rows.size(); ++i)
            CHECK(dot(lp.rows[i], serial.solution) == lp.rhs[i]);
        for (const Rat& v : serial.solution) CHECK(v >= 0);
        CHECK(serial.objective <= dot(lp.objective, witness));
    }
}

TEST_CASE("basis reconstruction certifies the optimum") {
    auto lp = lp_from(4, {Rat(-1), Rat(-2), Rat(0), Rat(0)},
                      {{Rat(1), Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(3), Rat(0), Rat(1)}},
                      {Rat(4), Rat(6)});
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    auto back = solve_from_basis(lp, r.basis, r.active_rows);
    REQUIRE(back.has_value());
    CHECK(back->objective == r.objective);
    CHECK(back->solution == r.solution);

    // A non-optimal basis guess is rejected rather than returned.
    auto junk = solve_from_basis(lp, {2, 3}, r.active_rows);
    if (junk) CHECK(junk->objective == r.objective);
    auto singular = solve_from_basis(lp, {0, 0}, r.active_rows);
    CHECK(!singular.has_value());
}

TEST_CASE("float assisted path matches the exact solver") {
    std::mt19937_64 rng(7);
    int assisted_hits = 0;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rat> witness;
        auto lp = random_feasible(rng, 4 + static_cast<int>(rng() % 5), 2 + static_cast<int>(rng() % 3), witness);
        auto exact = solve_lp(lp);
        bool fallback = false;
        auto fast = solve_lp_float_assisted(lp, true, fallback);
        REQUIRE(fast.status == exact.status);
        if (exact.status == LpStatus::Optimal) {
            CHECK(fast.objective == exact.objective);
            if (!fallback) ++assisted_hits;
        }
    }
    CHECK(assisted_hits > 0);
}

TEST_CASE("double instantiation agrees approximately") {
    auto lp = lp_from(4, {Rat(-1), Rat(-2), Rat(0), Rat(0)},
                      {{Rat(1), Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(3), Rat(0), Rat(1)}},
                      {Rat(4), Rat(6)});
    auto fl = solve_lp(to_double(lp));
    REQUIRE(fl.status == LpStatus::Optimal);
    CHECK(fl.objective == doctest::Approx(-5.0).epsilon(1e-9));
}
