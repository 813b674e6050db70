// hypothesis.hpp — null/alternative hypothesis classes over a finite sample
// space: either a finite generator family of pmfs (standing for its convex
// hull) or a constraint polytope, possibly lifted by auxiliary variables so
// L1-type sets stay linear. The simplex constraints (mass >= 0, total = 1)
// are implicit and always enforced; auxiliary variables are free and must be
// pinned by the supplied constraints.
#pragma once

#include "tvtest/core.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/lp.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tvtest {

template <class S>
struct LinearConstraint {
    std::vector<S> coeffs;  // atom variables first, then auxiliary variables
    Relation rel = Relation::LessEq;
    S rhs = S(0);
};

template <class S>
class HypothesisSet {
  public:
    static HypothesisSet generators(std::vector<Pmf<S>> gens) {
        if (gens.empty()) throw EmptyHypothesis("generator family is empty");
        HypothesisSet h;
        h.space_ = gens.front().space();
        for (const auto& g : gens) {
            if (!same_space(h.space_, g.space())) {
                throw InvalidGenerator("generators live on different sample spaces");
            }
        }
        h.generators_ = std::move(gens);
        h.is_generators_ = true;
        return h;
    }

    static HypothesisSet polytope(SpacePtr<S> space, std::size_t aux_count,
                                  std::vector<LinearConstraint<S>> constraints) {
        HypothesisSet h;
        h.space_ = std::move(space);
        h.aux_count_ = aux_count;
        const std::size_t width = h.space_->size() + aux_count;
        for (const auto& c : constraints) {
            if (c.coeffs.size() != width) {
                throw DimensionMismatch("constraint width must be atom count + auxiliary count");
            }
        }
        h.constraints_ = std::move(constraints);
        h.is_generators_ = false;
        return h;
    }

    bool is_generators() const { return is_generators_; }
    const std::vector<Pmf<S>>& generator_family() const { return generators_; }
    std::size_t aux_count() const { return aux_count_; }
    const std::vector<LinearConstraint<S>>& constraints() const { return constraints_; }
    const SpacePtr<S>& space() const { return space_; }

  private:
    HypothesisSet() = default;

    SpacePtr<S> space_;
    std::vector<Pmf<S>> generators_;
    std::size_t aux_count_ = 0;
    std::vector<LinearConstraint<S>> constraints_;
    bool is_generators_ = true;
};

template <class S>
struct SupportQuery {
    S value;
    Pmf<S> maximizer;
};

// --- constructors for the stock constraint classes ---

template <class S>
HypothesisSet<S> mean_at_most(const SpacePtr<S>& space, const S& m) {
    LinearConstraint<S> c{space->values(), Relation::LessEq, m};
    return HypothesisSet<S>::polytope(space, 0, {std::move(c)});
}

template <class S>
HypothesisSet<S> mean_at_least(const SpacePtr<S>& space, const S& m) {
    LinearConstraint<S> c{space->values(), Relation::GreaterEq, m};
    return HypothesisSet<S>::polytope(space, 0, {std::move(c)});
}

// One equality constraint mu(i) = mu(j) per pair; unpaired atoms are free.
template <class S>
HypothesisSet<S> symmetric_null(const SpacePtr<S>& space,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairing) {
    const std::size_t n = space->size();
    std::vector<bool> used(n, false);
    std::vector<LinearConstraint<S>> constraints;
    for (const auto& [i, j] : pairing) {
        if (i >= n || j >= n) throw InvalidArgument("symmetric_null: pairing index out of range");
        if (used[i] || (i != j && used[j])) {
            throw InvalidArgument("symmetric_null: atom paired twice");
        }
        used[i] = used[j] = true;
        if (i == j) continue;  // explicit fixed point
        std::vector<S> coeffs(n, S(0));
        coeffs[i] = S(1);
        coeffs[j] = S(-1);
        constraints.push_back({std::move(coeffs), Relation::Eq, S(0)});
    }
    return HypothesisSet<S>::polytope(space, 0, std::move(constraints));
}

// Lifted TV ball: auxiliary u_i >= |mu_i - c_i| and sum u <= 2 * radius.
template <class S>
HypothesisSet<S> tv_ball(const Pmf<S>& center, const S& radius) {
    if (radius < S(0) || radius > S(1)) throw InvalidArgument("tv_ball: radius outside [0,1]");
    const std::size_t n = center.size();
    std::vector<LinearConstraint<S>> constraints;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<S> up(2 * n, S(0));  // mu_i - u_i <= c_i
        up[i] = S(1);
        up[n + i] = S(-1);
        constraints.push_back({std::move(up), Relation::LessEq, center[i]});
        std::vector<S> down(2 * n, S(0));  // -mu_i - u_i <= -c_i
        down[i] = S(-1);
        down[n + i] = S(-1);
        constraints.push_back({std::move(down), Relation::LessEq, S(-center[i])});
    }
    std::vector<S> total(2 * n, S(0));
    for (std::size_t i = 0; i < n; ++i) total[n + i] = S(1);
    constraints.push_back({std::move(total), Relation::LessEq, S(2) * radius});
    return HypothesisSet<S>::polytope(center.space(), n, std::move(constraints));
}

namespace detail {

// Adds columns and rows stating "(mu_cols, fresh aux) lies in H". mu_cols must
// be existing columns with lower bound 0; the mass-one row and the
// representation-specific machinery are appended here.
template <class S>
void add_membership(LpBuilder<S>& b, const HypothesisSet<S>& h,
                    const std::vector<std::size_t>& mu_cols) {
    const std::size_t n = h.space()->size();
    if (mu_cols.size() != n) throw DimensionMismatch("add_membership: column count");
    if (h.is_generators()) {
        const auto& gens = h.generator_family();
        std::vector<std::size_t> w_cols;
        w_cols.reserve(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) w_cols.push_back(b.add_var(S(0), std::nullopt));
        std::vector<std::pair<std::size_t, S>> mass_row;
        for (auto c : w_cols) mass_row.emplace_back(c, S(1));
        b.add_row(Relation::Eq, S(1), mass_row);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::pair<std::size_t, S>> row{{mu_cols[i], S(-1)}};
            for (std::size_t k = 0; k < gens.size(); ++k) {
                if (gens[k][i] != S(0)) row.emplace_back(w_cols[k], gens[k][i]);
            }
            b.add_row(Relation::Eq, S(0), row);
        }
    } else {
        std::vector<std::size_t> aux_cols;
        aux_cols.reserve(h.aux_count());
        for (std::size_t j = 0; j < h.aux_count(); ++j) {
            aux_cols.push_back(b.add_var(std::nullopt, std::nullopt));
        }
        std::vector<std::pair<std::size_t, S>> mass_row;
        for (auto c : mu_cols) mass_row.emplace_back(c, S(1));
        b.add_row(Relation::Eq, S(1), mass_row);
        for (const auto& cst : h.constraints()) {
            std::vector<std::pair<std::size_t, S>> row;
            for (std::size_t i = 0; i < n; ++i) {
                if (cst.coeffs[i] != S(0)) row.emplace_back(mu_cols[i], cst.coeffs[i]);
            }
            for (std::size_t j = 0; j < h.aux_count(); ++j) {
                if (cst.coeffs[n + j] != S(0)) row.emplace_back(aux_cols[j], cst.coeffs[n + j]);
            }
            b.add_row(cst.rel, cst.rhs, row);
        }
    }
}

// Linear expression over existing builder columns plus a constant.
template <class S>
struct Affine {
    S constant{0};
    std::vector<std::pair<std::size_t, S>> terms;
};

// Encodes  sup_{mu in H} sum_i f_i mu_i <= bound  as linear rows.
//
// Generator family: one row f(p_k) <= bound per generator. Polytope: the
// inner supremum is replaced by feasibility of its LP dual (multiplier alpha
// on the mass row, signed multipliers on the user rows), which is the robust
// counterpart that keeps the enclosing minimization a single LP.
template <class S>
void add_support_upper_bound(LpBuilder<S>& b, const HypothesisSet<S>& h,
                             const std::vector<Affine<S>>& f, const Affine<S>& bound) {
    const std::size_t n = h.space()->size();
    if (f.size() != n) throw DimensionMismatch("add_support_upper_bound: f width");
    if (h.is_generators()) {
        for (const auto& g : h.generator_family()) {
            std::vector<std::pair<std::size_t, S>> row;
            S lhs_const(0);
            for (std::size_t i = 0; i < n; ++i) {
                if (g[i] == S(0)) continue;
                lhs_const += g[i] * f[i].constant;
                for (const auto& [col, coef] : f[i].terms) row.emplace_back(col, g[i] * coef);
            }
            for (const auto& [col, coef] : bound.terms) row.emplace_back(col, S(-coef));
            b.add_row(Relation::LessEq, S(bound.constant - lhs_const), row);
        }
        return;
    }

    const auto& rows = h.constraints();
    const std::size_t alpha = b.add_var(std::nullopt, std::nullopt);
    std::vector<std::size_t> lambda;
    lambda.reserve(rows.size());
    for (const auto& cst : rows) {
        switch (cst.rel) {
            case Relation::LessEq: lambda.push_back(b.add_var(S(0), std::nullopt)); break;
            case Relation::GreaterEq: lambda.push_back(b.add_var(std::nullopt, S(0))); break;
            case Relation::Eq: lambda.push_back(b.add_var(std::nullopt, std::nullopt)); break;
        }
    }
    // dual feasibility per atom: f_i - alpha - sum_r lambda_r G[r][i] <= 0
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, S>> row = f[i].terms;
        row.emplace_back(alpha, S(-1));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].coeffs[i] != S(0)) row.emplace_back(lambda[r], S(-rows[r].coeffs[i]));
        }
        b.add_row(Relation::LessEq, S(-f[i].constant), row);
    }
    // auxiliary columns of the inner LP are free: their dual rows are equalities
    for (std::size_t j = 0; j < h.aux_count(); ++j) {
        std::vector<std::pair<std::size_t, S>> row;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].coeffs[n + j] != S(0)) row.emplace_back(lambda[r], rows[r].coeffs[n + j]);
        }
        b.add_row(Relation::Eq, S(0), row);
    }
    // dual objective dominated by the bound: alpha + lambda.h - bound <= 0
    std::vector<std::pair<std::size_t, S>> obj_row{{alpha, S(1)}};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].rhs != S(0)) obj_row.emplace_back(lambda[r], rows[r].rhs);
    }
    for (const auto& [col, coef] : bound.terms) obj_row.emplace_back(col, S(-coef));
    b.add_row(Relation::LessEq, bound.constant, obj_row);
}

}  // namespace detail

// Nonempty subset of the simplex? Generators are valid by construction;
// polytopes get one feasibility LP.
template <class S>
void validate(const HypothesisSet<S>& h) {
    if (h.is_generators()) return;
    LpBuilder<S> b;
    std::vector<std::size_t> mu_cols;
    for (std::size_t i = 0; i < h.space()->size(); ++i) mu_cols.push_back(b.add_var(S(0), std::nullopt));
    detail::add_membership(b, h, mu_cols);
    auto sol = solve(std::move(b).build());
    if (sol.status != LpStatus::Optimal) {
        throw EmptyHypothesis("polytope does not intersect the probability simplex");
    }
}

// sup_{mu in H} f . mu together with a maximizer. Generator ties resolve to
// the lowest index.
template <class S>
SupportQuery<S> support_value(const HypothesisSet<S>& h, const std::vector<S>& f) {
    const std::size_t n = h.space()->size();
    if (f.size() != n) throw DimensionMismatch("support_value: f width != atom count");
    if (h.is_generators()) {
        const auto& gens = h.generator_family();
        std::size_t best = 0;
        S best_value = dot(gens[0].mass(), f);
        for (std::size_t k = 1; k < gens.size(); ++k) {
            S v = dot(gens[k].mass(), f);
            if (v > best_value) {
                best_value = v;
                best = k;
            }
        }
        return {best_value, gens[best]};
    }
    LpBuilder<S> b;
    std::vector<std::size_t> mu_cols;
    for (std::size_t i = 0; i < n; ++i) mu_cols.push_back(b.add_var(S(0), std::nullopt, S(-f[i])));
    detail::add_membership(b, h, mu_cols);
    auto sol = solve(std::move(b).build());
    if (sol.status != LpStatus::Optimal) {
        throw EmptyHypothesis("support_value: hypothesis set is empty");
    }
    std::vector<S> mass(sol.primal.begin(), sol.primal.begin() + n);
    auto maximizer = Pmf<S>::from_solver(h.space(), std::move(mass), scalar_traits<S>::feasibility_tol());
    return {S(-sol.objective), std::move(maximizer)};
}

template <class S>
SupportQuery<S> support_value(const HypothesisSet<S>& h, const TestFn<S>& f) {
    require_same_space(h.space(), f.space(), "support_value");
    return support_value(h, f.values());
}

// Membership of a pmf in the hypothesis set (= its hull for generators).
template <class S>
bool contains(const HypothesisSet<S>& h, const Pmf<S>& mu) {
    require_same_space(h.space(), mu.space(), "contains");
    const std::size_t n = h.space()->size();
    const S tol = scalar_traits<S>::feasibility_tol();
    if (h.is_generators()) {
        const auto& gens = h.generator_family();
        LpBuilder<S> b;
        std::vector<std::size_t> w_cols;
        for (std::size_t k = 0; k < gens.size(); ++k) w_cols.push_back(b.add_var(S(0), std::nullopt));
        std::vector<std::pair<std::size_t, S>> mass_row;
        for (auto c : w_cols) mass_row.emplace_back(c, S(1));
        b.add_row(Relation::Eq, S(1), mass_row);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::pair<std::size_t, S>> row;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                if (gens[k][i] != S(0)) row.emplace_back(w_cols[k], gens[k][i]);
            }
            b.add_row(Relation::Eq, mu[i], row);
        }
        return solve(std::move(b).build()).status == LpStatus::Optimal;
    }
    if (h.aux_count() == 0) {
        for (const auto& cst : h.constraints()) {
            S lhs = dot(cst.coeffs, mu.mass());
            switch (cst.rel) {
                case Relation::LessEq:
                    if (lhs > cst.rhs + tol) return false;
                    break;
                case Relation::GreaterEq:
                    if (lhs < cst.rhs - tol) return false;
                    break;
                case Relation::Eq:
                    if (!within(lhs, cst.rhs, tol)) return false;
                    break;
            }
        }
        return true;
    }
    // lifted polytope: feasibility over the auxiliary block with mu fixed
    LpBuilder<S> b;
    std::vector<std::size_t> aux_cols;
    for (std::size_t j = 0; j < h.aux_count(); ++j) aux_cols.push_back(b.add_var(std::nullopt, std::nullopt));
    for (const auto& cst : h.constraints()) {
        std::vector<std::pair<std::size_t, S>> row;
        S shift(0);
        for (std::size_t i = 0; i < n; ++i) shift += cst.coeffs[i] * mu[i];
        for (std::size_t j = 0; j < h.aux_count(); ++j) {
            if (cst.coeffs[n + j] != S(0)) row.emplace_back(aux_cols[j], cst.coeffs[n + j]);
        }
        b.add_row(cst.rel, S(cst.rhs - shift), row);
    }
    return solve(std::move(b).build()).status == LpStatus::Optimal;
}

}  // namespace tvtest
