#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scut/rational.hpp"

namespace scut {

// Linear program in equality standard form:
//   minimize objective . x   subject to   rows[i] . x == rhs[i],  x >= 0.
// Callers encode inequalities by appending slack variables themselves.
template <typename T>
struct DenseLp {
    int num_vars = 0;
    std::vector<T> objective;          // size num_vars
    std::vector<std::vector<T>> rows;  // each size num_vars
    std::vector<T> rhs;                // size rows.size()
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <typename T>
struct SimplexResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<T> solution;      // size num_vars when Optimal, else empty
    T objective{};                // objective . solution when Optimal
    std::vector<int> basis;       // basic column per surviving row
    std::vector<int> active_rows; // input row indices that survived redundancy removal
    long pivots = 0;
};

namespace detail {

// Exact types compare against literal zero; floating point needs slack.
template <typename T> inline T lp_eps() { return T(0); }
template <> inline double lp_eps<double>() { return 1e-9; }

} // namespace detail

namespace kernel {

// Subtracts tab[i][pivot_col] multiples of the pivot row from every other row,
// zeroing the pivot column outside the pivot row. Rows are independent, so the
// parallel and serial paths produce identical tableaus entry for entry.
// The last row of `tab` is the reduced-cost row and participates like any other.
template <typename T>
void eliminate_rows(std::vector<std::vector<T>>& tab, std::size_t pivot_row,
                    std::size_t pivot_col, bool parallel);

extern template void eliminate_rows<Rat>(std::vector<std::vector<Rat>>&, std::size_t,
                                         std::size_t, bool);
extern template void eliminate_rows<double>(std::vector<std::vector<double>>&, std::size_t,
                                            std::size_t, bool);

} // namespace kernel

// Two-phase primal simplex on a dense tableau with Bland's rule (smallest
// entering index; ties on the leaving ratio broken by smallest basic variable),
// which rules out cycling. Phase one starts from an artificial identity basis;
// artificials stuck in the basis at zero level are driven out and rows that
// turn out redundant are dropped (reported through active_rows).
template <typename T>
SimplexResult<T> solve_lp(const DenseLp<T>& lp, bool parallel = true);

extern template SimplexResult<Rat> solve_lp<Rat>(const DenseLp<Rat>&, bool);
extern template SimplexResult<double> solve_lp<double>(const DenseLp<double>&, bool);

DenseLp<double> to_double(const DenseLp<Rat>& lp);

// Reconstructs the exact optimal solution determined by a basis guess, usually
// taken from a floating-point run on the same program. Returns nullopt unless
// the basis system is nonsingular, the basic point is feasible for every input
// row, and all reduced costs certify optimality.
std::optional<SimplexResult<Rat>> solve_from_basis(const DenseLp<Rat>& lp,
                                                   const std::vector<int>& basis,
                                                   const std::vector<int>& active_rows);

// Floating-point simplex followed by exact reconstruction of its final basis.
// Falls back to the all-rational solver when the reconstruction fails;
// `exact_fallback` reports which path produced the answer.
SimplexResult<Rat> solve_lp_float_assisted(const DenseLp<Rat>& lp, bool parallel,
                                           bool& exact_fallback);

} // namespace scut
