#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scut/grouping.hpp"
#include "scut/instance.hpp"
#include "scut/simplex.hpp"

namespace scut {

// Thrown when a size guard trips; callers decide whether a bigger limit is sane.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Size accounting for the unreduced relaxation, whose variables are one table
// entry x(S,A) for every set S in the downward closure of the ground family
// and every A subset of S. Exact when n allows a full subset scan, otherwise a
// per-table upper bound with `exact` cleared.
struct ClosureStats {
    long long distinct_sets = 0;    // |downward closure|
    long long variables = 0;        // sum over S of 2^|S|
    long long consistency_rows = 0; // sum over S of |S| * 2^(|S|-1)
    bool exact = true;
};

ClosureStats closure_stats(int n, const std::vector<Mask>& maximal_sets);

struct LpStats {
    ClosureStats full;
    long long reduced_variables = 0;
    long long reduced_rows = 0;
    int maximal_sets = 0;
    int glue_pairs_enforced = 0;
    int glue_pairs_implied = 0;
    long pivots = 0;
    bool float_assisted = false; // float run's basis reconstructed exactly
    bool exact_fallback = false; // float path failed, rational solve ran
};

// Solution of the relaxation, stored as one distribution table per maximal
// ground set (de-homogenized, so each table sums to one). Marginals x(S,A)
// are served for any S inside some maximal set; glue equalities make the
// answer independent of which containing table is folded.
class XYSolution {
public:
    XYSolution() = default;

    // Exact marginal; S and A are global bitmasks, A must be a subset of S and
    // S a subset of some maximal ground set. Memoizes fold results, so
    // concurrent calls are not safe; verification folds locally instead.
    const Rat& x(Mask S, Mask A) const;
    // The whole marginal table of S, indexed by local masks of S.
    const std::vector<Rat>& marginal(Mask S) const;
    bool covers(Mask S) const;

    bool has_pair(int u, int v) const;
    const Rat& y_of(int u, int v) const;

    const Rat& opt_lp() const { return opt_; }
    const Rat& homogenizer() const { return t_; }

    int table_count() const { return static_cast<int>(maximal_.size()); }
    Mask table_mask(int i) const { return maximal_[static_cast<std::size_t>(i)]; }
    const std::vector<Rat>& table(int i) const { return tables_[static_cast<std::size_t>(i)]; }

    struct CheckReport {
        bool ok = true;
        std::string what;
        long long rows_checked = 0;
    };

    // Re-derives every contract of the solution from scratch: tables are
    // nonnegative and sum to one, every pair of tables agrees on the full
    // intersection (not only the rows the program enforced), y values match
    // their defining sums, weighted y totals reproduce the objective and the
    // normalizer. Pairwise agreement folds run in parallel when asked.
    CheckReport verify(const Instance& inst, bool parallel) const;

private:
    friend class Relaxation;

    int canonical(Mask S) const; // smallest containing table, -1 if none

    std::vector<Mask> maximal_;
    std::vector<std::vector<Rat>> tables_;
    std::map<std::pair<int, int>, Rat> y_;
    Rat opt_ = 0;
    Rat t_ = 0;
    mutable std::map<std::pair<int, Mask>, std::vector<Rat>> marginals_;
};

// Builds and solves the relaxation attached to a grouped decomposition.
//
// The unreduced program has a variable x(S,A) for every closure set S; the
// reduced program keeps one table per maximal ground set plus the pair values
// and the homogenizer t, and replaces the per-set rows by
//   (sum)   sum_A x_i(A) = t for every table,
//   (glue)  marginal agreement of table pairs on their intersection,
//   (pair)  y(p) = sum over A with |A ∩ p| = 1 of x_i(A), table i canonical,
//   (scale) sum over demand pairs of dem(p) y(p) = 1,
// minimizing the capacity-weighted y sum. Glue on every intersection makes
// marginals well-defined on the whole closure, so the reduction is exact.
// Pairs whose agreement already follows from enforced pairs through a common
// superset table are skipped.
class Relaxation {
public:
    static constexpr long long kDefaultVariableGuard = 5'000'000;
    static constexpr long long kTableauEntryGuard = 1LL << 25;

    Relaxation(const Instance& inst, const KLDecomposition& kd,
               long long variable_guard = kDefaultVariableGuard);

    const GroundSetFamily& family() const { return fam_; }
    const std::vector<Mask>& maximal_sets() const { return maximal_; }
    int canonical_maximal(Mask subset) const;
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    const DenseLp<Rat>& program() const { return lp_; }
    const LpStats& build_stats() const { return stats_; }

    long long table_offset(int maximal) const { return offsets_[static_cast<std::size_t>(maximal)]; }
    int y_column(int u, int v) const;
    int t_column() const { return t_col_; }

    XYSolution solve(bool float_backend, bool parallel, LpStats* stats_out = nullptr) const;

    // Feasible point of the reduced program induced by an integral cut; the
    // cut must separate some demand. Layout matches program().
    std::vector<Rat> integral_point(Mask side) const;

    // Checks the homogenized unreduced rows at an integral cut. A point mass
    // leaves at most three nonzero terms per row, so every consistency row is
    // covered by evaluating the handful of masks where a term can be nonzero.
    bool check_integral_point_full(Mask side, std::string* why = nullptr) const;

    // Streams the unreduced program in LP format. Variables are named
    // x_<setid>_<amask> (setid ranks the closure in increasing-mask order,
    // amask is the global bitmask of A), y_<u>_<v>, and t. Fractional weights
    // are written as p/q, an exactness extension over stock LP files.
    void dump_full_lp(std::ostream& os) const;

private:
    Instance inst_;
    GroundSetFamily fam_;
    std::vector<Mask> maximal_;
    std::vector<std::pair<int, int>> pairs_;
    std::map<std::pair<int, int>, int> pair_col_;
    std::vector<long long> offsets_;
    int t_col_ = 0;
    DenseLp<Rat> lp_;
    LpStats stats_;
};

} // namespace scut
