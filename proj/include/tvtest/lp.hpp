// lp.hpp — self-contained dense linear-programming kernel.
//
// Two-phase primal simplex on a full tableau, Bland's anti-cycling pivot
// rule throughout, generic over double / Rational. Geared to desk-scale
// problems (up to a few hundred variables) where determinism and exact
// rational arithmetic matter more than speed.
//
// General form accepted:
//     min  cost . x
//     s.t. eq_rows    x  =  eq_rhs
//          ub_rows    x <=  ub_rhs
//          lower <= x <= upper   (entries optional; empty vectors mean
//                                 lower = 0, upper = +inf for every var)
//
// Dual convention (reported one multiplier per constraint row, eq block
// first): equality duals are free, <=-row duals are <= 0, and with
// d = cost - A^T y the dual objective is
//     y . rhs + sum_j psi_j,   psi_j = d_j * lower_j  if d_j > 0
//                              psi_j = d_j * upper_j  if d_j < 0
//                              psi_j = 0              if d_j = 0.
// check_solution audits primal/dual feasibility, complementary slackness
// and the duality gap against exactly this convention, independently of the
// solver internals.
#pragma once

#include "tvtest/errors.hpp"
#include "tvtest/scalar.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tvtest {

enum class Relation { LessEq, Eq, GreaterEq };

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

template <class S>
struct LpProblem {
    std::vector<S> cost;
    std::vector<std::vector<S>> eq_rows;
    std::vector<S> eq_rhs;
    std::vector<std::vector<S>> ub_rows;
    std::vector<S> ub_rhs;
    std::vector<std::optional<S>> lower;  // empty => all 0
    std::vector<std::optional<S>> upper;  // empty => all +inf

    std::size_t num_vars() const { return cost.size(); }
    std::size_t num_rows() const { return eq_rows.size() + ub_rows.size(); }

    std::optional<S> lower_bound(std::size_t j) const {
        if (lower.empty()) return S(0);
        return lower[j];
    }
    std::optional<S> upper_bound(std::size_t j) const {
        if (upper.empty()) return std::nullopt;
        return upper[j];
    }

    void validate() const {
        const std::size_t n = num_vars();
        if (eq_rows.size() != eq_rhs.size() || ub_rows.size() != ub_rhs.size()) {
            throw DimensionMismatch("lp: row/rhs count mismatch");
        }
        for (const auto& r : eq_rows) {
            if (r.size() != n) throw DimensionMismatch("lp: eq row width != variable count");
        }
        for (const auto& r : ub_rows) {
            if (r.size() != n) throw DimensionMismatch("lp: ub row width != variable count");
        }
        if (!lower.empty() && lower.size() != n) throw DimensionMismatch("lp: lower bound count");
        if (!upper.empty() && upper.size() != n) throw DimensionMismatch("lp: upper bound count");
        if constexpr (!scalar_traits<S>::is_exact) {
            auto finite = [](const S& v) { return v == v && v < std::numeric_limits<S>::infinity() && v > -std::numeric_limits<S>::infinity(); };
            for (const auto& v : cost) {
                if (!finite(v)) throw InvalidArgument("lp: non-finite cost entry");
            }
            for (const auto& r : eq_rows) {
                for (const auto& v : r) {
                    if (!finite(v)) throw InvalidArgument("lp: non-finite matrix entry");
                }
            }
            for (const auto& r : ub_rows) {
                for (const auto& v : r) {
                    if (!finite(v)) throw InvalidArgument("lp: non-finite matrix entry");
                }
            }
            for (const auto& v : eq_rhs) {
                if (!finite(v)) throw InvalidArgument("lp: non-finite rhs entry");
            }
            for (const auto& v : ub_rhs) {
                if (!finite(v)) throw InvalidArgument("lp: non-finite rhs entry");
            }
        }
    }
};

template <class S>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<S> primal;  // per variable, valid when Optimal
    std::vector<S> dual;    // per row, eq block then ub block, valid when Optimal
    S objective = S(0);
};

template <class S>
struct ResidualReport {
    S primal_feasibility = S(0);
    S dual_feasibility = S(0);
    S complementary_slackness = S(0);
    S duality_gap = S(0);

    S max_residual() const {
        S m = primal_feasibility;
        if (dual_feasibility > m) m = dual_feasibility;
        if (complementary_slackness > m) m = complementary_slackness;
        if (duality_gap > m) m = duality_gap;
        return m;
    }
};

// Incremental construction helper used by the hypothesis/minimax layers.
// Rows tagged GreaterEq are stored negated so the built problem only has
// eq/ub blocks; callers that need duals must use eq/<= rows directly.
template <class S>
class LpBuilder {
  public:
    std::size_t add_var(std::optional<S> lo, std::optional<S> hi, S cost = S(0)) {
        lower_.push_back(std::move(lo));
        upper_.push_back(std::move(hi));
        cost_.push_back(std::move(cost));
        return cost_.size() - 1;
    }

    std::size_t num_vars() const { return cost_.size(); }

    void set_cost(std::size_t var, S cost) { cost_.at(var) = std::move(cost); }

    void add_row(Relation rel, S rhs, const std::vector<std::pair<std::size_t, S>>& entries) {
        std::vector<S> row(cost_.size(), S(0));
        for (const auto& [j, v] : entries) row.at(j) += v;
        if (rel == Relation::Eq) {
            eq_rows_.push_back(std::move(row));
            eq_rhs_.push_back(std::move(rhs));
        } else if (rel == Relation::LessEq) {
            ub_rows_.push_back(std::move(row));
            ub_rhs_.push_back(std::move(rhs));
        } else {
            for (auto& v : row) v = -v;
            ub_rows_.push_back(std::move(row));
            ub_rhs_.push_back(S(-rhs));
        }
    }

    LpProblem<S> build() && {
        LpProblem<S> p;
        p.cost = std::move(cost_);
        p.eq_rows = std::move(eq_rows_);
        p.eq_rhs = std::move(eq_rhs_);
        p.ub_rows = std::move(ub_rows_);
        p.ub_rhs = std::move(ub_rhs_);
        // rows were padded to the width at insertion time; pad again in case
        // variables were added later
        for (auto& r : p.eq_rows) r.resize(p.cost.size(), S(0));
        for (auto& r : p.ub_rows) r.resize(p.cost.size(), S(0));
        p.lower = std::move(lower_);
        p.upper = std::move(upper_);
        return p;
    }

  private:
    std::vector<S> cost_;
    std::vector<std::vector<S>> eq_rows_, ub_rows_;
    std::vector<S> eq_rhs_, ub_rhs_;
    std::vector<std::optional<S>> lower_, upper_;
};

namespace detail {

// Bookkeeping for the general-form -> standard-form reduction.
enum class VarKind { ShiftLower, FlipUpper, Split };

template <class S>
struct VarMap {
    VarKind kind;
    std::size_t col;        // primary column
    std::size_t neg_col;    // Split only
    S shift;                // ShiftLower: lower bound; FlipUpper: upper bound
};

template <class S>
struct Standardized {
    std::vector<std::vector<S>> a;  // m x ncols, original (pre-pivot) copy
    std::vector<S> b;
    std::vector<S> c;               // phase-2 costs over ncols
    std::vector<VarMap<S>> vars;    // per original variable
    std::vector<int> row_sign;      // per std row, +1 / -1 vs pre-scaling row
    std::vector<int> row_origin;    // per std row: original row index, -1 for bound rows
    std::vector<std::size_t> slack_col;  // per std row: slack column or npos
    std::size_t ncols = 0;
    bool trivially_infeasible = false;  // crossed bounds
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

template <class S>
Standardized<S> standardize(const LpProblem<S>& p) {
    Standardized<S> sf;
    const std::size_t n = p.num_vars();

    // variable transforms first so row widths are known
    sf.vars.resize(n);
    struct BoundRow { std::size_t col; S rhs; };
    std::vector<BoundRow> bound_rows;
    for (std::size_t j = 0; j < n; ++j) {
        auto lo = p.lower_bound(j);
        auto hi = p.upper_bound(j);
        auto& vm = sf.vars[j];
        if (lo && hi && *hi < *lo) sf.trivially_infeasible = true;
        if (lo) {
            vm.kind = VarKind::ShiftLower;
            vm.col = sf.ncols++;
            vm.shift = *lo;
            if (hi) bound_rows.push_back({vm.col, S(*hi - *lo)});
        } else if (hi) {
            vm.kind = VarKind::FlipUpper;
            vm.col = sf.ncols++;
            vm.shift = *hi;
        } else {
            vm.kind = VarKind::Split;
            vm.col = sf.ncols++;
            vm.neg_col = sf.ncols++;
            vm.shift = S(0);
        }
    }

    const std::size_t me = p.eq_rows.size();
    const std::size_t mu = p.ub_rows.size();
    const std::size_t mb = bound_rows.size();
    const std::size_t m = me + mu + mb;
    const std::size_t struct_cols = sf.ncols;
    sf.ncols += mu + mb;  // slacks

    sf.a.assign(m, std::vector<S>(sf.ncols, S(0)));
    sf.b.assign(m, S(0));
    sf.c.assign(sf.ncols, S(0));
    sf.row_sign.assign(m, 1);
    sf.row_origin.assign(m, -1);
    sf.slack_col.assign(m, npos);

    auto emit_coeff = [&](std::size_t row, std::size_t j, const S& v) {
        const auto& vm = sf.vars[j];
        switch (vm.kind) {
            case VarKind::ShiftLower:
                sf.a[row][vm.col] += v;
                sf.b[row] -= v * vm.shift;
                break;
            case VarKind::FlipUpper:
                sf.a[row][vm.col] -= v;
                sf.b[row] -= v * vm.shift;
                break;
            case VarKind::Split:
                sf.a[row][vm.col] += v;
                sf.a[row][vm.neg_col] -= v;
                break;
        }
    };

    std::size_t row = 0, next_slack = struct_cols;
    for (std::size_t i = 0; i < me; ++i, ++row) {
        sf.b[row] = p.eq_rhs[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (p.eq_rows[i][j] != S(0)) emit_coeff(row, j, p.eq_rows[i][j]);
        }
        sf.row_origin[row] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < mu; ++i, ++row) {
        sf.b[row] = p.ub_rhs[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (p.ub_rows[i][j] != S(0)) emit_coeff(row, j, p.ub_rows[i][j]);
        }
        sf.slack_col[row] = next_slack;
        sf.a[row][next_slack++] = S(1);
        sf.row_origin[row] = static_cast<int>(me + i);
    }
    for (std::size_t i = 0; i < mb; ++i, ++row) {
        sf.b[row] = bound_rows[i].rhs;
        sf.a[row][bound_rows[i].col] += S(1);
        sf.slack_col[row] = next_slack;
        sf.a[row][next_slack++] = S(1);
    }

    for (std::size_t j = 0; j < n; ++j) {
        const auto& vm = sf.vars[j];
        switch (vm.kind) {
            case VarKind::ShiftLower: sf.c[vm.col] = p.cost[j]; break;
            case VarKind::FlipUpper: sf.c[vm.col] = S(-p.cost[j]); break;
            case VarKind::Split:
                sf.c[vm.col] = p.cost[j];
                sf.c[vm.neg_col] = S(-p.cost[j]);
                break;
        }
    }

    // scale rows so every rhs is nonnegative
    for (std::size_t i = 0; i < m; ++i) {
        if (sf.b[i] < S(0)) {
            sf.row_sign[i] = -1;
            sf.b[i] = -sf.b[i];
            for (auto& v : sf.a[i]) v = -v;
        }
    }
    return sf;
}

// Solve B^T y = cb by Gaussian elimination on a dense copy.
template <class S>
std::vector<S> solve_transposed(std::vector<std::vector<S>> bt, std::vector<S> cb) {
    const std::size_t m = bt.size();
    const S tol = scalar_traits<S>::pivot_tol();
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t best = npos;
        if constexpr (scalar_traits<S>::is_exact) {
            for (std::size_t i = k; i < m; ++i) {
                if (bt[i][k] != S(0)) { best = i; break; }
            }
        } else {
            S mag = tol;
            for (std::size_t i = k; i < m; ++i) {
                S a = scalar_traits<S>::abs(bt[i][k]);
                if (a > mag) { mag = a; best = i; }
            }
        }
        if (best == npos) throw NumericBreakdown("dual extraction: basis matrix numerically singular");
        std::swap(bt[k], bt[best]);
        std::swap(cb[k], cb[best]);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (bt[i][k] == S(0)) continue;
            S f = bt[i][k] / bt[k][k];
            for (std::size_t j = k; j < m; ++j) bt[i][j] -= f * bt[k][j];
            cb[i] -= f * cb[k];
        }
    }
    std::vector<S> y(m);
    for (std::size_t k = m; k-- > 0;) {
        S acc = cb[k];
        for (std::size_t j = k + 1; j < m; ++j) acc -= bt[k][j] * y[j];
        y[k] = acc / bt[k][k];
    }
    return y;
}

}  // namespace detail

// Two-phase simplex; deterministic (Bland's rule) for a fixed input.
template <class S>
LpSolution<S> solve(const LpProblem<S>& problem) {
    problem.validate();
    auto sf = detail::standardize(problem);
    LpSolution<S> sol;
    if (sf.trivially_infeasible) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }

    const S feas_tol = scalar_traits<S>::feasibility_tol();
    const S pivot_tol = scalar_traits<S>::pivot_tol();
    std::size_t m = sf.a.size();
    const std::size_t ncols = sf.ncols;

    // Tableau state. Artificials are appended past ncols as needed.
    std::vector<std::vector<S>> t = sf.a;
    std::vector<S> rhs = sf.b;
    std::vector<std::size_t> basis(m, detail::npos);
    std::size_t total_cols = ncols;

    std::vector<std::size_t> artificial_rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (sf.slack_col[i] != detail::npos && sf.row_sign[i] == 1) {
            basis[i] = sf.slack_col[i];
        } else {
            artificial_rows.push_back(i);
        }
    }
    const std::size_t num_art = artificial_rows.size();
    for (std::size_t k = 0; k < num_art; ++k) {
        for (std::size_t i = 0; i < m; ++i) t[i].push_back(S(0));
        t[artificial_rows[k]][total_cols] = S(1);
        basis[artificial_rows[k]] = total_cols;
        ++total_cols;
    }

    const std::size_t max_iter = 50 * (m + total_cols);
    std::size_t iterations = 0;

    auto pivot = [&](std::size_t prow, std::size_t pcol, std::vector<S>& redcost) {
        S piv = t[prow][pcol];
        if constexpr (!scalar_traits<S>::is_exact) {
            if (scalar_traits<S>::abs(piv) < pivot_tol) {
                throw NumericBreakdown("simplex pivot below threshold");
            }
        }
        if (piv != S(1)) {
            for (auto& v : t[prow]) v /= piv;
            rhs[prow] /= piv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == prow || t[i][pcol] == S(0)) continue;
            S f = t[i][pcol];
            for (std::size_t j = 0; j < total_cols; ++j) t[i][j] -= f * t[prow][j];
            t[i][pcol] = S(0);  // keep the unit column exact in float mode
            rhs[i] -= f * rhs[prow];
        }
        if (redcost[pcol] != S(0)) {
            S f = redcost[pcol];
            for (std::size_t j = 0; j < total_cols; ++j) redcost[j] -= f * t[prow][j];
            redcost[pcol] = S(0);
        }
        basis[prow] = pcol;
    };

    // Returns true when optimal, false when unbounded.
    auto run_phase = [&](std::vector<S>& redcost, std::size_t col_limit) -> bool {
        for (;;) {
            if (++iterations > max_iter) {
                throw MaxIterationsExceeded("simplex iteration cap (50*(rows+cols)) exceeded");
            }
            std::size_t enter = detail::npos;
            for (std::size_t j = 0; j < col_limit; ++j) {  // Bland: lowest index
                if (redcost[j] < -feas_tol) { enter = j; break; }
            }
            if (enter == detail::npos) return true;
            std::size_t leave = detail::npos;
            S best_ratio(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= pivot_tol) continue;
                S ratio = rhs[i] / t[i][enter];
                if (leave == detail::npos || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == detail::npos) return false;
            pivot(leave, enter, redcost);
        }
    };

    if (num_art > 0) {
        std::vector<S> redcost(total_cols, S(0));
        for (std::size_t j = total_cols - num_art; j < total_cols; ++j) redcost[j] = S(1);
        for (auto r : artificial_rows) {
            for (std::size_t j = 0; j < total_cols; ++j) redcost[j] -= t[r][j];
        }
        bool ok = run_phase(redcost, total_cols);
        if (!ok) throw NumericBreakdown("phase-1 objective unbounded; inconsistent tableau");
        S phase1 = S(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= ncols) phase1 += rhs[i];
        }
        if (phase1 > feas_tol) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive remaining artificials out; a row with no structural entry is
        // linearly dependent and gets removed.
        for (std::size_t i = 0; i < m;) {
            if (basis[i] < ncols) { ++i; continue; }
            std::size_t pcol = detail::npos;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (scalar_traits<S>::abs(t[i][j]) > pivot_tol) { pcol = j; break; }
            }
            if (pcol != detail::npos) {
                pivot(i, pcol, redcost);
                ++i;
            } else {
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
                rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(i));
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                sf.a.erase(sf.a.begin() + static_cast<std::ptrdiff_t>(i));
                sf.b.erase(sf.b.begin() + static_cast<std::ptrdiff_t>(i));
                sf.row_sign.erase(sf.row_sign.begin() + static_cast<std::ptrdiff_t>(i));
                sf.row_origin.erase(sf.row_origin.begin() + static_cast<std::ptrdiff_t>(i));
                --m;
            }
        }
    }

    {
        std::vector<S> redcost(total_cols, S(0));
        for (std::size_t j = 0; j < ncols; ++j) redcost[j] = sf.c[j];
        for (std::size_t j = ncols; j < total_cols; ++j) redcost[j] = S(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < ncols && sf.c[basis[i]] != S(0)) {
                S f = sf.c[basis[i]];
                // basic columns are unit vectors, so this zeroes their reduced costs
                for (std::size_t j = 0; j < total_cols; ++j) redcost[j] -= f * t[i][j];
            }
        }
        bool ok = run_phase(redcost, ncols);  // artificials never re-enter
        if (!ok) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
    }

    // primal in standard coordinates
    std::vector<S> xstd(ncols, S(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < ncols) xstd[basis[i]] = rhs[i];
    }
    const std::size_t n = problem.num_vars();
    sol.primal.assign(n, S(0));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& vm = sf.vars[j];
        switch (vm.kind) {
            case detail::VarKind::ShiftLower: sol.primal[j] = vm.shift + xstd[vm.col]; break;
            case detail::VarKind::FlipUpper: sol.primal[j] = vm.shift - xstd[vm.col]; break;
            case detail::VarKind::Split: sol.primal[j] = xstd[vm.col] - xstd[vm.neg_col]; break;
        }
    }
    sol.objective = S(0);
    for (std::size_t j = 0; j < n; ++j) sol.objective += problem.cost[j] * sol.primal[j];

    // duals: solve B^T y = c_B over the surviving rows of the pre-pivot copy;
    // after the drive-out step every basic variable is structural
    {
        std::vector<std::vector<S>> bt(m, std::vector<S>(m));
        std::vector<S> cb(m);
        for (std::size_t i = 0; i < m; ++i) {
            cb[i] = sf.c[basis[i]];
            for (std::size_t r = 0; r < m; ++r) bt[i][r] = sf.a[r][basis[i]];
        }
        std::vector<S> y = detail::solve_transposed(std::move(bt), std::move(cb));
        sol.dual.assign(problem.num_rows(), S(0));
        for (std::size_t r = 0; r < m; ++r) {
            if (sf.row_origin[r] >= 0) {
                S v = y[r];
                if (sf.row_sign[r] < 0) v = -v;
                sol.dual[static_cast<std::size_t>(sf.row_origin[r])] = v;
            }
        }
    }

    sol.status = LpStatus::Optimal;
    return sol;
}

// Residual audit of a claimed optimal solution; works on any (problem,
// solution) pair, not just our own solver output.
template <class S>
ResidualReport<S> check_solution(const LpProblem<S>& p, const LpSolution<S>& s) {
    if (s.status != LpStatus::Optimal) throw InvalidArgument("check_solution: solution not optimal");
    const std::size_t n = p.num_vars();
    const std::size_t me = p.eq_rows.size();
    ResidualReport<S> rep;
    auto bump = [](S& slot, const S& v) {
        S a = scalar_traits<S>::abs(v);
        if (a > slot) slot = a;
    };

    for (std::size_t i = 0; i < me; ++i) {
        bump(rep.primal_feasibility, dot(p.eq_rows[i], s.primal) - p.eq_rhs[i]);
    }
    for (std::size_t i = 0; i < p.ub_rows.size(); ++i) {
        S slack = p.ub_rhs[i] - dot(p.ub_rows[i], s.primal);
        if (slack < S(0)) bump(rep.primal_feasibility, slack);
        bump(rep.complementary_slackness, s.dual[me + i] * slack);
        if (s.dual[me + i] > S(0)) bump(rep.dual_feasibility, s.dual[me + i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        auto lo = p.lower_bound(j);
        auto hi = p.upper_bound(j);
        if (lo && s.primal[j] < *lo) bump(rep.primal_feasibility, s.primal[j] - *lo);
        if (hi && s.primal[j] > *hi) bump(rep.primal_feasibility, s.primal[j] - *hi);
    }

    // reduced costs against the reported row duals
    std::vector<S> d = p.cost;
    for (std::size_t i = 0; i < me; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[j] -= s.dual[i] * p.eq_rows[i][j];
    }
    for (std::size_t i = 0; i < p.ub_rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) d[j] -= s.dual[me + i] * p.ub_rows[i][j];
    }

    S dual_obj = S(0);
    for (std::size_t i = 0; i < me; ++i) dual_obj += s.dual[i] * p.eq_rhs[i];
    for (std::size_t i = 0; i < p.ub_rows.size(); ++i) dual_obj += s.dual[me + i] * p.ub_rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
        auto lo = p.lower_bound(j);
        auto hi = p.upper_bound(j);
        if (d[j] > S(0)) {
            if (!lo) {
                bump(rep.dual_feasibility, d[j]);
            } else {
                dual_obj += d[j] * *lo;
                bump(rep.complementary_slackness, d[j] * (s.primal[j] - *lo));
            }
        } else if (d[j] < S(0)) {
            if (!hi) {
                bump(rep.dual_feasibility, d[j]);
            } else {
                dual_obj += d[j] * *hi;
                bump(rep.complementary_slackness, d[j] * (*hi - s.primal[j]));
            }
        }
    }

    S primal_obj = dot(p.cost, s.primal);
    bump(rep.duality_gap, primal_obj - dual_obj);
    return rep;
}

}  // namespace tvtest
