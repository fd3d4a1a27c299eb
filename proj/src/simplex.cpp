#include "scut/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cstdint>

namespace scut {

namespace kernel {

template <typename T>
void eliminate_rows(std::vector<std::vector<T>>& tab, std::size_t pivot_row,
                    std::size_t pivot_col, bool parallel) {
    const std::vector<T>& piv = tab[pivot_row];
    const std::int64_t m = static_cast<std::int64_t>(tab.size());
    const std::size_t width = piv.size();
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t i = 0; i < m; ++i) {
        if (static_cast<std::size_t>(i) == pivot_row) continue;
        std::vector<T>& row = tab[static_cast<std::size_t>(i)];
        T factor = row[pivot_col];
        if (factor == 0) continue;
        for (std::size_t k = 0; k < width; ++k) {
            if (piv[k] != 0) row[k] -= factor * piv[k];
        }
        row[pivot_col] = 0;
    }
}

template void eliminate_rows<Rat>(std::vector<std::vector<Rat>>&, std::size_t, std::size_t,
                                  bool);
template void eliminate_rows<double>(std::vector<std::vector<double>>&, std::size_t,
                                     std::size_t, bool);

} // namespace kernel

namespace {

// Shared tableau layout: tab[0..m-1] are constraint rows, tab[m] is the
// reduced-cost row; column layout is [variables | rhs].
template <typename T>
struct Tableau {
    std::vector<std::vector<T>> tab;
    std::vector<int> basis;      // basic column of each constraint row
    std::vector<int> active_rows;
    long pivots = 0;

    std::size_t rows() const { return tab.size() - 1; }
    std::size_t rhs_col() const { return tab[0].size() - 1; }

    void pivot(std::size_t r, std::size_t col, bool parallel) {
        std::vector<T>& prow = tab[r];
        T p = prow[col];
        for (T& v : prow) {
            if (v != 0) v /= p;
        }
        prow[col] = 1;
        kernel::eliminate_rows(tab, r, col, parallel);
        basis[r] = static_cast<int>(col);
        ++pivots;
    }

    // Bland iteration until the cost row has no negative entry over the first
    // `cols` columns. Returns false when an entering column proves the program
    // unbounded.
    bool run(std::size_t cols, bool parallel) {
        const T eps = detail::lp_eps<T>();
        const std::size_t rhs = rhs_col();
        std::vector<T>& cost = tab.back();
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (cost[j] < -eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows();
            for (std::size_t i = 0; i < rows(); ++i) {
                if (!(tab[i][enter] > eps)) continue;
                if (leave == rows()) {
                    leave = i;
                    continue;
                }
                // ratio compare: rhs[i]/a[i] vs rhs[leave]/a[leave], positive pivots
                T lhs = tab[i][rhs] * tab[leave][enter];
                T rhsv = tab[leave][rhs] * tab[i][enter];
                if (lhs < rhsv || (lhs == rhsv && basis[i] < basis[leave])) leave = i;
            }
            if (leave == rows()) return false;
            pivot(leave, enter, parallel);
        }
    }
};

} // namespace

template <typename T>
SimplexResult<T> solve_lp(const DenseLp<T>& lp, bool parallel) {
    const std::size_t n = static_cast<std::size_t>(lp.num_vars);
    const std::size_t m = lp.rows.size();
    if (lp.objective.size() != n || lp.rhs.size() != m)
        throw std::invalid_argument("simplex: inconsistent program dimensions");
    for (const auto& row : lp.rows)
        if (row.size() != n) throw std::invalid_argument("simplex: ragged row");

    const T eps = detail::lp_eps<T>();
    Tableau<T> t;
    t.tab.assign(m + 1, std::vector<T>(n + m + 1, T(0)));
    t.basis.resize(m);
    t.active_rows.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool neg = lp.rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            t.tab[i][j] = neg ? T(-lp.rows[i][j]) : lp.rows[i][j];
        t.tab[i][n + i] = 1;
        t.tab[i][n + m] = neg ? T(-lp.rhs[i]) : lp.rhs[i];
        t.basis[i] = static_cast<int>(n + i);
        t.active_rows[i] = static_cast<int>(i);
    }
    // Phase-one reduced costs: minimizing the artificial sum with the identity
    // basis gives cost[j] = -sum_i tab[i][j] on real columns, 0 on artificials.
    {
        std::vector<T>& cost = t.tab[m];
        for (std::size_t j = 0; j <= n + m; ++j) {
            if (j >= n && j < n + m) continue;
            T s(0);
            for (std::size_t i = 0; i < m; ++i) s += t.tab[i][j];
            cost[j] = -s;
        }
    }
    t.run(n + m, parallel); // bounded below by 0, cannot be unbounded

    SimplexResult<T> res;
    res.pivots = t.pivots;
    T infeas = -t.tab[m][n + m];
    if (infeas > eps) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    // Drive zero-level artificials out of the basis; a row with no real-column
    // support is redundant and is dropped.
    for (std::size_t i = 0; i < t.rows();) {
        if (t.basis[i] < static_cast<int>(n)) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j) {
            T v = t.tab[i][j];
            if (v > eps || v < -eps) {
                col = j;
                break;
            }
        }
        if (col < n) {
            t.pivot(i, col, parallel);
            ++i;
        } else {
            t.tab.erase(t.tab.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            t.active_rows.erase(t.active_rows.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Strip artificial columns and install the phase-two cost row.
    const std::size_t q = t.rows();
    const std::size_t old_rhs = n + m;
    for (std::size_t i = 0; i <= q; ++i) {
        t.tab[i][n] = t.tab[i][old_rhs];
        t.tab[i].resize(n + 1);
    }
    {
        std::vector<T>& cost = t.tab[q];
        std::fill(cost.begin(), cost.end(), T(0));
        for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
        for (std::size_t i = 0; i < q; ++i) {
            T cb = lp.objective[static_cast<std::size_t>(t.basis[i])];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= n; ++j) {
                if (t.tab[i][j] != 0) cost[j] -= cb * t.tab[i][j];
            }
        }
    }
    if (!t.run(n, parallel)) {
        res.pivots = t.pivots;
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.pivots = t.pivots;
    res.status = LpStatus::Optimal;
    res.basis = t.basis;
    res.active_rows = t.active_rows;
    res.solution.assign(n, T(0));
    for (std::size_t i = 0; i < q; ++i)
        res.solution[static_cast<std::size_t>(t.basis[i])] = t.tab[i][n];
    res.objective = T(0);
    for (std::size_t j = 0; j < n; ++j)
        if (res.solution[j] != 0) res.objective += lp.objective[j] * res.solution[j];
    return res;
}

template SimplexResult<Rat> solve_lp<Rat>(const DenseLp<Rat>&, bool);
template SimplexResult<double> solve_lp<double>(const DenseLp<double>&, bool);

DenseLp<double> to_double(const DenseLp<Rat>& lp) {
    DenseLp<double> out;
    out.num_vars = lp.num_vars;
    out.objective.reserve(lp.objective.size());
    for (const Rat& v : lp.objective) out.objective.push_back(rat_double(v));
    out.rows.reserve(lp.rows.size());
    for (const auto& row : lp.rows) {
        std::vector<double> r;
        r.reserve(row.size());
        for (const Rat& v : row) r.push_back(rat_double(v));
        out.rows.push_back(std::move(r));
    }
    out.rhs.reserve(lp.rhs.size());
    for (const Rat& v : lp.rhs) out.rhs.push_back(rat_double(v));
    return out;
}

namespace {

// Exact linear solve by Gauss-Jordan; returns false on a singular system.
bool solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                  std::vector<Rat>& out) {
    const std::size_t q = a.size();
    for (std::size_t c = 0; c < q; ++c) {
        std::size_t p = q;
        for (std::size_t r = c; r < q; ++r) {
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        }
        if (p == q) return false;
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        Rat inv = a[c][c];
        for (std::size_t k = c; k < q; ++k)
            if (a[c][k] != 0) a[c][k] /= inv;
        b[c] /= inv;
        for (std::size_t r = 0; r < q; ++r) {
            if (r == c) continue;
            Rat f = a[r][c];
            if (f == 0) continue;
            for (std::size_t k = c; k < q; ++k)
                if (a[c][k] != 0) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    out = std::move(b);
    return true;
}

} // namespace

std::optional<SimplexResult<Rat>> solve_from_basis(const DenseLp<Rat>& lp,
                                                   const std::vector<int>& basis,
                                                   const std::vector<int>& active_rows) {
    const std::size_t q = basis.size();
    if (active_rows.size() != q) return std::nullopt;
    const std::size_t n = static_cast<std::size_t>(lp.num_vars);
    for (int j : basis)
        if (j < 0 || j >= lp.num_vars) return std::nullopt;
    for (int i : active_rows)
        if (i < 0 || static_cast<std::size_t>(i) >= lp.rows.size()) return std::nullopt;

    std::vector<std::vector<Rat>> bmat(q, std::vector<Rat>(q));
    std::vector<Rat> brhs(q);
    for (std::size_t r = 0; r < q; ++r) {
        const auto& row = lp.rows[static_cast<std::size_t>(active_rows[r])];
        for (std::size_t k = 0; k < q; ++k)
            bmat[r][k] = row[static_cast<std::size_t>(basis[k])];
        brhs[r] = lp.rhs[static_cast<std::size_t>(active_rows[r])];
    }
    std::vector<Rat> xb;
    if (!solve_square(bmat, brhs, xb)) return std::nullopt;
    for (const Rat& v : xb)
        if (v < 0) return std::nullopt;

    SimplexResult<Rat> res;
    res.solution.assign(n, Rat(0));
    for (std::size_t k = 0; k < q; ++k)
        res.solution[static_cast<std::size_t>(basis[k])] = xb[k];

    // The basic point must satisfy every input row, including any the caller's
    // float run discarded as redundant.
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        Rat dot(0);
        const auto& row = lp.rows[i];
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] != 0 && res.solution[j] != 0) dot += row[j] * res.solution[j];
        if (dot != lp.rhs[i]) return std::nullopt;
    }

    // Dual certificate: y solves B^T y = c_B, and every reduced cost
    // c_j - y . A_j must be nonnegative.
    std::vector<std::vector<Rat>> bt(q, std::vector<Rat>(q));
    std::vector<Rat> cb(q);
    for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t k = 0; k < q; ++k) bt[r][k] = bmat[k][r];
        cb[r] = lp.objective[static_cast<std::size_t>(basis[r])];
    }
    std::vector<Rat> y;
    if (!solve_square(bt, cb, y)) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
        Rat red = lp.objective[j];
        for (std::size_t r = 0; r < q; ++r) {
            const Rat& a = lp.rows[static_cast<std::size_t>(active_rows[r])][j];
            if (a != 0 && y[r] != 0) red -= y[r] * a;
        }
        if (red < 0) return std::nullopt;
    }

    res.status = LpStatus::Optimal;
    res.basis = basis;
    res.active_rows = active_rows;
    res.objective = Rat(0);
    for (std::size_t j = 0; j < n; ++j)
        if (res.solution[j] != 0) res.objective += lp.objective[j] * res.solution[j];
    return res;
}

SimplexResult<Rat> solve_lp_float_assisted(const DenseLp<Rat>& lp, bool parallel,
                                           bool& exact_fallback) {
    exact_fallback = false;
    SimplexResult<double> fl = solve_lp(to_double(lp), parallel);
    if (fl.status == LpStatus::Optimal) {
        auto exact = solve_from_basis(lp, fl.basis, fl.active_rows);
        if (exact) {
            exact->pivots = fl.pivots;
            return *exact;
        }
    }
    exact_fallback = true;
    return solve_lp(lp, parallel);
}

} // namespace scut
