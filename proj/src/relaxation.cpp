#include "scut/relaxation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <climits>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace scut {

namespace {

constexpr long long kSaturated = LLONG_MAX / 4;

long long pow3_saturating(int k) {
    long long v = 1;
    for (int i = 0; i < k; ++i) {
        if (v > kSaturated / 3) return kSaturated;
        v *= 3;
    }
    return v;
}

// Collapse one element out of a distribution table: the result ranges over
// cur \ {v} and sums the two fibers of v.
std::vector<Rat> fold_out(const std::vector<Rat>& in, Mask cur, int v) {
    int pos = local_index(cur, v);
    std::size_t half = in.size() >> 1;
    std::vector<Rat> out(half);
    std::size_t low = (std::size_t{1} << pos) - 1;
    for (std::size_t idx = 0; idx < half; ++idx) {
        std::size_t i0 = ((idx & ~low) << 1) | (idx & low);
        out[idx] = in[i0] + in[i0 | (std::size_t{1} << pos)];
    }
    return out;
}

std::vector<Rat> marginal_of(std::vector<Rat> table, Mask cur, Mask keep) {
    Mask drop = cur & ~keep;
    while (drop) {
        int v = __builtin_ctzll(drop);
        drop &= drop - 1;
        table = fold_out(table, cur, v);
        cur &= ~bit(v);
    }
    return table;
}

std::string pair_name(int u, int v) {
    return "y_" + std::to_string(u) + "_" + std::to_string(v);
}

// One LP-format term, always preceded by its sign except at the start of a row.
void put_term(std::ostream& os, bool& first, const Rat& coeff, const std::string& name) {
    if (coeff == 0) return;
    Rat a = coeff < 0 ? Rat(-coeff) : coeff;
    if (first) {
        if (coeff < 0) os << "- ";
        first = false;
    } else {
        os << (coeff < 0 ? " - " : " + ");
    }
    if (a != 1) os << rat_str(a) << " ";
    os << name;
}

} // namespace

ClosureStats closure_stats(int n, const std::vector<Mask>& maximal_sets) {
    ClosureStats st;
    if (n <= 20) {
        const Mask top = n >= 64 ? ~Mask{0} : (bit(n) - 1);
        for (Mask s = 0;; ++s) {
            bool inside = false;
            for (Mask m : maximal_sets) {
                if ((s & ~m) == 0) {
                    inside = true;
                    break;
                }
            }
            if (inside) {
                int k = popcount(s);
                st.distinct_sets += 1;
                st.variables += 1LL << k;
                if (k >= 1) st.consistency_rows += static_cast<long long>(k) << (k - 1);
            }
            if (s == top) break;
        }
        return st;
    }
    st.exact = false;
    for (Mask m : maximal_sets) {
        int k = popcount(m);
        if (k > 36) {
            st.distinct_sets = st.variables = st.consistency_rows = kSaturated;
            return st;
        }
        st.distinct_sets += 1LL << k;
        st.variables += pow3_saturating(k);
        st.consistency_rows += std::min(kSaturated, k * pow3_saturating(k - 1));
        st.distinct_sets = std::min(st.distinct_sets, kSaturated);
        st.variables = std::min(st.variables, kSaturated);
        st.consistency_rows = std::min(st.consistency_rows, kSaturated);
    }
    return st;
}

int XYSolution::canonical(Mask S) const {
    for (std::size_t i = 0; i < maximal_.size(); ++i)
        if ((S & ~maximal_[i]) == 0) return static_cast<int>(i);
    return -1;
}

bool XYSolution::covers(Mask S) const { return canonical(S) >= 0; }

const std::vector<Rat>& XYSolution::marginal(Mask S) const {
    int ci = canonical(S);
    if (ci < 0) throw std::invalid_argument("marginal query: set outside every table");
    auto key = std::make_pair(ci, S);
    auto it = marginals_.find(key);
    if (it == marginals_.end()) {
        it = marginals_
                 .emplace(key, marginal_of(tables_[static_cast<std::size_t>(ci)],
                                           maximal_[static_cast<std::size_t>(ci)], S))
                 .first;
    }
    return it->second;
}

const Rat& XYSolution::x(Mask S, Mask A) const {
    if ((A & ~S) != 0) throw std::invalid_argument("marginal query: A not inside S");
    return marginal(S)[compress_to_local(S, A)];
}

bool XYSolution::has_pair(int u, int v) const {
    return y_.count({std::min(u, v), std::max(u, v)}) != 0;
}

const Rat& XYSolution::y_of(int u, int v) const {
    auto it = y_.find({std::min(u, v), std::max(u, v)});
    if (it == y_.end()) throw std::invalid_argument("no separation variable for this pair");
    return it->second;
}

XYSolution::CheckReport XYSolution::verify(const Instance& inst, bool parallel) const {
    CheckReport rep;
    auto fail = [&rep](const std::string& msg) {
        if (rep.ok) {
            rep.ok = false;
            rep.what = msg;
        }
    };

    for (std::size_t i = 0; i < tables_.size() && rep.ok; ++i) {
        Rat sum(0);
        for (const Rat& v : tables_[i]) {
            if (v < 0 || v > 1) {
                fail("table " + std::to_string(i) + ": entry outside [0,1]");
                break;
            }
            sum += v;
        }
        if (rep.ok && sum != 1) fail("table " + std::to_string(i) + ": does not sum to one");
        rep.rows_checked += static_cast<long long>(tables_[i].size()) + 1;
    }
    if (!rep.ok) return rep;

    // Full pairwise agreement, independent of which glue rows the program kept.
    std::vector<std::pair<int, int>> prs;
    for (int i = 0; i < table_count(); ++i)
        for (int j = i + 1; j < table_count(); ++j)
            if ((maximal_[static_cast<std::size_t>(i)] & maximal_[static_cast<std::size_t>(j)]) != 0)
                prs.push_back({i, j});
    std::vector<char> okv(prs.size(), 1);
    std::vector<long long> cnt(prs.size(), 0);
    const std::int64_t np = static_cast<std::int64_t>(prs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t k = 0; k < np; ++k) {
        auto [i, j] = prs[static_cast<std::size_t>(k)];
        Mask mi = maximal_[static_cast<std::size_t>(i)];
        Mask mj = maximal_[static_cast<std::size_t>(j)];
        Mask inter = mi & mj;
        auto a = marginal_of(tables_[static_cast<std::size_t>(i)], mi, inter);
        auto b = marginal_of(tables_[static_cast<std::size_t>(j)], mj, inter);
        cnt[static_cast<std::size_t>(k)] = static_cast<long long>(a.size());
        for (std::size_t idx = 0; idx < a.size(); ++idx) {
            if (a[idx] != b[idx]) {
                okv[static_cast<std::size_t>(k)] = 0;
                break;
            }
        }
    }
    for (std::size_t k = 0; k < prs.size(); ++k) {
        rep.rows_checked += cnt[k];
        if (!okv[k]) {
            fail("tables " + std::to_string(prs[k].first) + " and " +
                 std::to_string(prs[k].second) + " disagree on their intersection");
            return rep;
        }
    }

    for (const auto& [p, val] : y_) {
        Mask pm = bit(p.first) | bit(p.second);
        if (!covers(pm)) {
            fail(pair_name(p.first, p.second) + ": endpoints not covered by any table");
            return rep;
        }
        if (val < 0 || val > 1) {
            fail(pair_name(p.first, p.second) + ": outside [0,1]");
            return rep;
        }
        Rat expect = x(pm, bit(p.first)) + x(pm, bit(p.second));
        if (val != expect) {
            fail(pair_name(p.first, p.second) + ": does not match its defining sum");
            return rep;
        }
        ++rep.rows_checked;
    }

    Rat dem_total(0), cap_total(0);
    for (const auto& e : inst.demand) dem_total += e.w * y_of(e.u, e.v);
    for (const auto& e : inst.supply) cap_total += e.w * y_of(e.u, e.v);
    if (dem_total * t_ != 1) fail("demand-weighted separation does not match the normalizer");
    if (rep.ok && cap_total * t_ != opt_) fail("capacity-weighted separation does not reproduce the objective");
    rep.rows_checked += 2;
    return rep;
}

Relaxation::Relaxation(const Instance& inst, const KLDecomposition& kd, long long variable_guard)
    : inst_(inst), fam_(build_ground_sets(kd)) {
    if (inst.n > 62)
        throw GuardError("relaxation: node masks require n <= 62, got n = " + std::to_string(inst.n));

    std::vector<Mask> gmasks;
    gmasks.reserve(fam_.ground_sets.size());
    for (const auto& gs : fam_.ground_sets) gmasks.push_back(list_to_mask(gs));
    for (std::size_t i = 0; i < gmasks.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < gmasks.size() && !dominated; ++j)
            if (j != i && gmasks[i] != gmasks[j] && (gmasks[i] & ~gmasks[j]) == 0) dominated = true;
        if (!dominated) maximal_.push_back(gmasks[i]);
    }

    stats_.full = closure_stats(inst.n, maximal_);
    stats_.maximal_sets = static_cast<int>(maximal_.size());
    if (stats_.full.variables > variable_guard)
        throw GuardError("relaxation guard: the unreduced program has " +
                         std::to_string(stats_.full.variables) + " variables (limit " +
                         std::to_string(variable_guard) + "); raise the guard to proceed");

    std::set<std::pair<int, int>> ps;
    for (const auto& e : inst.supply) ps.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    for (const auto& e : inst.demand) ps.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    pairs_.assign(ps.begin(), ps.end());

    long long off = 0;
    offsets_.resize(maximal_.size());
    for (std::size_t i = 0; i < maximal_.size(); ++i) {
        offsets_[i] = off;
        off += 1LL << popcount(maximal_[i]);
    }
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        pair_col_[pairs_[k]] = static_cast<int>(off + static_cast<long long>(k));
    long long nvars = off + static_cast<long long>(pairs_.size()) + 1;
    if (nvars >= INT_MAX)
        throw GuardError("relaxation guard: reduced variable count does not fit the solver index type");
    t_col_ = static_cast<int>(nvars - 1);

    // Decide which table pairs get explicit glue rows. A pair is implied when
    // its intersection sits inside a third table already tied to both sides.
    struct GluePair {
        int i, j;
        Mask inter;
    };
    std::vector<GluePair> cand;
    for (int i = 0; i < stats_.maximal_sets; ++i)
        for (int j = i + 1; j < stats_.maximal_sets; ++j) {
            Mask inter = maximal_[static_cast<std::size_t>(i)] & maximal_[static_cast<std::size_t>(j)];
            if (inter != 0) cand.push_back({i, j, inter});
        }
    std::sort(cand.begin(), cand.end(), [](const GluePair& a, const GluePair& b) {
        int pa = popcount(a.inter), pb = popcount(b.inter);
        if (pa != pb) return pa > pb;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::set<std::pair<int, int>> covered;
    std::vector<GluePair> enforced;
    long long glue_rows = 0;
    for (const GluePair& g : cand) {
        bool implied = false;
        for (int k = 0; k < stats_.maximal_sets && !implied; ++k) {
            if (k == g.i || k == g.j) continue;
            if ((g.inter & ~maximal_[static_cast<std::size_t>(k)]) != 0) continue;
            if (covered.count({std::min(g.i, k), std::max(g.i, k)}) &&
                covered.count({std::min(g.j, k), std::max(g.j, k)}))
                implied = true;
        }
        covered.insert({g.i, g.j});
        if (implied) {
            ++stats_.glue_pairs_implied;
        } else {
            ++stats_.glue_pairs_enforced;
            enforced.push_back(g);
            glue_rows += (1LL << popcount(g.inter)) - 1;
        }
    }

    long long nrows = static_cast<long long>(maximal_.size()) + glue_rows +
                      static_cast<long long>(pairs_.size()) + 1;
    long long entries = (nrows + 1) * (nvars + nrows + 1);
    if (entries > kTableauEntryGuard)
        throw GuardError("relaxation guard: simplex tableau would hold " + std::to_string(entries) +
                         " entries (limit " + std::to_string(kTableauEntryGuard) + ")");

    lp_.num_vars = static_cast<int>(nvars);
    lp_.objective.assign(static_cast<std::size_t>(nvars), Rat(0));
    for (const auto& e : inst_.supply) {
        int c = pair_col_.at({std::min(e.u, e.v), std::max(e.u, e.v)});
        lp_.objective[static_cast<std::size_t>(c)] += e.w;
    }
    lp_.rows.reserve(static_cast<std::size_t>(nrows));

    for (std::size_t i = 0; i < maximal_.size(); ++i) {
        std::vector<Rat> row(static_cast<std::size_t>(nvars), Rat(0));
        std::size_t sz = std::size_t{1} << popcount(maximal_[i]);
        for (std::size_t a = 0; a < sz; ++a) row[static_cast<std::size_t>(offsets_[i]) + a] = 1;
        row[static_cast<std::size_t>(t_col_)] = -1;
        lp_.rows.push_back(std::move(row));
        lp_.rhs.push_back(Rat(0));
    }

    for (const GluePair& g : enforced) {
        int gi = popcount(g.inter);
        std::size_t nblocks = (std::size_t{1} << gi) - 1; // agreement on the full mask is implied
        std::size_t base = lp_.rows.size();
        for (std::size_t b = 0; b < nblocks; ++b) {
            lp_.rows.emplace_back(static_cast<std::size_t>(nvars), Rat(0));
            lp_.rhs.push_back(Rat(0));
        }
        for (int side = 0; side < 2; ++side) {
            int ti = side == 0 ? g.i : g.j;
            Rat coeff = side == 0 ? Rat(1) : Rat(-1);
            Mask m = maximal_[static_cast<std::size_t>(ti)];
            std::size_t sz = std::size_t{1} << popcount(m);
            for (std::size_t a = 0; a < sz; ++a) {
                Mask ga = expand_local(m, static_cast<uint32_t>(a));
                std::size_t blk = compress_to_local(g.inter, ga & g.inter);
                if (blk == nblocks) continue;
                lp_.rows[base + blk][static_cast<std::size_t>(offsets_[static_cast<std::size_t>(ti)]) + a] += coeff;
            }
        }
    }

    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        auto [u, v] = pairs_[k];
        int ci = canonical_maximal(bit(u) | bit(v));
        if (ci < 0)
            throw std::logic_error("relaxation: ground family fails to cover a weighted pair");
        std::vector<Rat> row(static_cast<std::size_t>(nvars), Rat(0));
        row[static_cast<std::size_t>(pair_col_.at(pairs_[k]))] = 1;
        Mask m = maximal_[static_cast<std::size_t>(ci)];
        int pu = local_index(m, u), pv = local_index(m, v);
        std::size_t sz = std::size_t{1} << popcount(m);
        for (std::size_t a = 0; a < sz; ++a) {
            if (((a >> pu) & 1) != ((a >> pv) & 1))
                row[static_cast<std::size_t>(offsets_[static_cast<std::size_t>(ci)]) + a] = -1;
        }
        lp_.rows.push_back(std::move(row));
        lp_.rhs.push_back(Rat(0));
    }

    {
        std::vector<Rat> row(static_cast<std::size_t>(nvars), Rat(0));
        for (const auto& e : inst_.demand) {
            int c = pair_col_.at({std::min(e.u, e.v), std::max(e.u, e.v)});
            row[static_cast<std::size_t>(c)] += e.w;
        }
        lp_.rows.push_back(std::move(row));
        lp_.rhs.push_back(Rat(1));
    }

    stats_.reduced_variables = nvars;
    stats_.reduced_rows = static_cast<long long>(lp_.rows.size());
}

int Relaxation::canonical_maximal(Mask subset) const {
    for (std::size_t i = 0; i < maximal_.size(); ++i)
        if ((subset & ~maximal_[i]) == 0) return static_cast<int>(i);
    return -1;
}

int Relaxation::y_column(int u, int v) const {
    auto it = pair_col_.find({std::min(u, v), std::max(u, v)});
    return it == pair_col_.end() ? -1 : it->second;
}

XYSolution Relaxation::solve(bool float_backend, bool parallel, LpStats* stats_out) const {
    LpStats st = stats_;
    SimplexResult<Rat> res;
    if (float_backend) {
        bool fell_back = false;
        res = solve_lp_float_assisted(lp_, parallel, fell_back);
        st.float_assisted = !fell_back;
        st.exact_fallback = fell_back;
    } else {
        res = solve_lp(lp_, parallel);
    }
    st.pivots = res.pivots;
    if (res.status != LpStatus::Optimal)
        throw std::logic_error("relaxation: reduced program is not optimal, which a valid instance cannot produce");
    const Rat& t = res.solution[static_cast<std::size_t>(t_col_)];
    if (!(t > 0)) throw std::logic_error("relaxation: homogenizer vanished at the optimum");

    XYSolution sol;
    sol.maximal_ = maximal_;
    sol.tables_.resize(maximal_.size());
    for (std::size_t i = 0; i < maximal_.size(); ++i) {
        std::size_t sz = std::size_t{1} << popcount(maximal_[i]);
        sol.tables_[i].resize(sz);
        for (std::size_t a = 0; a < sz; ++a)
            sol.tables_[i][a] = res.solution[static_cast<std::size_t>(offsets_[i]) + a] / t;
    }
    for (const auto& [p, col] : pair_col_)
        sol.y_[p] = res.solution[static_cast<std::size_t>(col)] / t;
    sol.opt_ = res.objective;
    sol.t_ = t;
    if (stats_out) *stats_out = st;
    return sol;
}

std::vector<Rat> Relaxation::integral_point(Mask side) const {
    Cut cut = make_cut(inst_, side);
    if (cut.dem_cross == 0)
        throw std::invalid_argument("integral point: the cut separates no demand");
    Rat t = Rat(1) / cut.dem_cross;
    std::vector<Rat> point(static_cast<std::size_t>(lp_.num_vars), Rat(0));
    for (std::size_t i = 0; i < maximal_.size(); ++i) {
        uint32_t a = compress_to_local(maximal_[i], side & maximal_[i]);
        point[static_cast<std::size_t>(offsets_[i]) + a] = t;
    }
    for (const auto& [p, col] : pair_col_) {
        bool crossing = has_bit(side, p.first) != has_bit(side, p.second);
        if (crossing) point[static_cast<std::size_t>(col)] = t;
    }
    point[static_cast<std::size_t>(t_col_)] = t;
    return point;
}

bool Relaxation::check_integral_point_full(Mask side, std::string* why) const {
    auto fail = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (inst_.n > 20) return fail("full-row check needs a closure scan, disabled for n > 20");
    Cut cut = make_cut(inst_, side);
    if (cut.dem_cross == 0) return fail("cut separates no demand");
    const Rat t = Rat(1) / cut.dem_cross;

    // Point-mass evaluator for the homogenized unreduced variables.
    auto xval = [&](Mask S, Mask A) -> Rat { return A == (side & S) ? t : Rat(0); };

    // Pair rows and the scaling row, evaluated concretely.
    for (const auto& [p, col] : pair_col_) {
        (void)col;
        Mask pm = bit(p.first) | bit(p.second);
        int ci = canonical_maximal(pm);
        Mask sp = maximal_[static_cast<std::size_t>(ci)];
        Rat sum(0);
        for (Mask a = 0;; a = (a - sp) & sp) {
            if (popcount(a & pm) == 1) sum += xval(sp, a);
            if (a == sp) break;
        }
        bool crossing = has_bit(side, p.first) != has_bit(side, p.second);
        Rat yv = crossing ? t : Rat(0);
        if (yv != sum) return fail(pair_name(p.first, p.second) + " row fails at the integral point");
        if (yv < 0 || yv > t) return fail(pair_name(p.first, p.second) + " outside [0,t]");
    }
    {
        Rat total(0);
        for (const auto& e : inst_.demand) {
            bool crossing = has_bit(side, e.u) != has_bit(side, e.v);
            if (crossing) total += e.w * t;
        }
        if (total != 1) return fail("scaling row fails at the integral point");
    }

    // Per-set and consistency rows over the whole closure. Only masks with a
    // potentially nonzero term need evaluating: a point mass zeroes the rest.
    const Mask top = bit(inst_.n) - 1;
    for (Mask s = 0;; ++s) {
        bool inside = false;
        for (Mask m : maximal_)
            if ((s & ~m) == 0) {
                inside = true;
                break;
            }
        if (inside) {
            if (xval(s, side & s) != t) return fail("per-set sum row fails");
            Mask rest = s;
            while (rest) {
                int v = __builtin_ctzll(rest);
                rest &= rest - 1;
                Mask sub = s & ~bit(v);
                Mask a0 = side & sub;
                if (xval(sub, a0) != xval(s, a0) + xval(s, a0 | bit(v)))
                    return fail("consistency row fails");
                // One representative zero row, to exercise the other branch.
                if (sub != 0) {
                    Mask a1 = a0 ^ (sub & -sub);
                    if (xval(sub, a1) != xval(s, a1) + xval(s, a1 | bit(v)))
                        return fail("consistency row fails on a zero row");
                }
            }
        }
        if (s == top) break;
    }

    // The same cut as a point of the reduced program, checked row by row.
    std::vector<Rat> point = integral_point(side);
    for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
        Rat dot(0);
        for (std::size_t j = 0; j < point.size(); ++j)
            if (lp_.rows[r][j] != 0 && point[j] != 0) dot += lp_.rows[r][j] * point[j];
        if (dot != lp_.rhs[r]) return fail("reduced row " + std::to_string(r) + " fails at the integral point");
    }
    return true;
}

void Relaxation::dump_full_lp(std::ostream& os) const {
    if (inst_.n > 20)
        throw GuardError("dump: closure enumeration is disabled for n > 20");
    std::vector<Mask> closure;
    std::unordered_map<Mask, long long> rank;
    const Mask top = bit(inst_.n) - 1;
    for (Mask s = 0;; ++s) {
        for (Mask m : maximal_) {
            if ((s & ~m) == 0) {
                rank[s] = static_cast<long long>(closure.size());
                closure.push_back(s);
                break;
            }
        }
        if (s == top) break;
    }

    auto xname = [&rank](Mask s, Mask a) {
        return "x_" + std::to_string(rank.at(s)) + "_" + std::to_string(static_cast<unsigned long long>(a));
    };

    os << "\\ sparsest-cut relaxation, unreduced\n";
    os << "\\ variables x_<setid>_<amask> (downward closure in increasing-mask order), y_<u>_<v>, t\n";
    os << "\\ all variables default to [0, +inf); rational weights keep the p/q form\n";
    os << "Minimize\n obj:";
    {
        bool first = true;
        os << " ";
        for (const auto& e : inst_.supply)
            put_term(os, first, e.w, pair_name(std::min(e.u, e.v), std::max(e.u, e.v)));
        os << "\n";
    }
    os << "Subject To\n";
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        auto [u, v] = pairs_[k];
        Mask pm = bit(u) | bit(v);
        Mask sp = maximal_[static_cast<std::size_t>(canonical_maximal(pm))];
        os << " r2_" << k << ": ";
        bool first = true;
        put_term(os, first, Rat(1), pair_name(u, v));
        for (Mask a = 0;; a = (a - sp) & sp) {
            if (popcount(a & pm) == 1) put_term(os, first, Rat(-1), xname(sp, a));
            if (a == sp) break;
        }
        os << " = 0\n";
    }
    for (Mask s : closure) {
        os << " r3_" << rank.at(s) << ": ";
        bool first = true;
        for (Mask a = 0;; a = (a - s) & s) {
            put_term(os, first, Rat(1), xname(s, a));
            if (a == s) break;
        }
        put_term(os, first, Rat(-1), "t");
        os << " = 0\n";
    }
    for (Mask s : closure) {
        Mask rest = s;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            Mask sub = s & ~bit(v);
            for (Mask a = 0;; a = (a - sub) & sub) {
                os << " r5_" << rank.at(s) << "_" << v << "_" << static_cast<unsigned long long>(a)
                   << ": ";
                bool first = true;
                put_term(os, first, Rat(1), xname(sub, a));
                put_term(os, first, Rat(-1), xname(s, a));
                put_term(os, first, Rat(-1), xname(s, a | bit(v)));
                os << " = 0\n";
                if (a == sub) break;
            }
        }
    }
    os << " cc: ";
    {
        bool first = true;
        for (const auto& e : inst_.demand)
            put_term(os, first, e.w, pair_name(std::min(e.u, e.v), std::max(e.u, e.v)));
        os << " = 1\n";
    }
    os << "End\n";
}

} // namespace scut
