// effnull.hpp — e-variables and the effective null hypothesis.
//
// The polar of P is the set of nonnegative Z with sup over the hull of
// E_mu[Z] <= 1; the bipolar (effective null) holds the nonnegative measures
// integrating every such Z to at most 1. On finite spaces the bipolar is the
// solid hull of the generator hull, so membership has two independent
// routes: a domination LP and a capped polar-supremum LP. Both are exposed
// and cross-checked in the test suites.
#pragma once

#include "tvtest/core.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/hypothesis.hpp"
#include "tvtest/lp.hpp"
#include "tvtest/minimax.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tvtest {

// Nonnegative payoff vector (wealth multiplier per atom). Whether it is an
// e-variable is relative to a null hypothesis; see is_e_variable.
template <class S>
class EVariable {
  public:
    EVariable(SpacePtr<S> space, std::vector<S> z) : space_(std::move(space)), z_(std::move(z)) {
        if (z_.size() != space_->size()) throw DimensionMismatch("e-variable dimension != atom count");
        for (const auto& v : z_) {
            if (v < S(0)) throw InvalidMeasure("e-variable entry is negative");
        }
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& values() const { return z_; }
    const S& operator[](std::size_t i) const { return z_[i]; }
    std::size_t size() const { return z_.size(); }

  private:
    SpacePtr<S> space_;
    std::vector<S> z_;
};

// Nonnegative measure of total mass at most 1. On finite spaces every
// effective-null element is dominated by a hull probability, so mass > 1 is
// rejected outright.
template <class S>
class SubProbability {
  public:
    SubProbability(SpacePtr<S> space, std::vector<S> mass)
        : space_(std::move(space)), mass_(std::move(mass)) {
        if (mass_.size() != space_->size()) {
            throw DimensionMismatch("sub-probability dimension != atom count");
        }
        S sum(0);
        for (const auto& v : mass_) {
            if (v < S(0)) throw InvalidMeasure("sub-probability entry is negative");
            sum += v;
        }
        if (sum > S(1) + scalar_traits<S>::pmf_sum_tol()) {
            throw InvalidMeasure("sub-probability mass exceeds 1");
        }
    }

    explicit SubProbability(const Pmf<S>& p) : space_(p.space()), mass_(p.mass()) {}

    static SubProbability zero(SpacePtr<S> space) {
        std::vector<S> mass(space->size(), S(0));
        return SubProbability(std::move(space), std::move(mass));
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& mass() const { return mass_; }
    const S& operator[](std::size_t i) const { return mass_[i]; }
    std::size_t size() const { return mass_.size(); }

  private:
    SpacePtr<S> space_;
    std::vector<S> mass_;
};

template <class S>
bool is_e_variable(const EVariable<S>& z, const HypothesisSet<S>& p) {
    require_same_space(z.space(), p.space(), "is_e_variable");
    return support_value(p, z.values()).value <= S(1) + scalar_traits<S>::feasibility_tol();
}

// mu in P_eff via domination: some hull member mu' >= mu componentwise.
template <class S>
bool in_effective_null_dom(const SubProbability<S>& mu, const HypothesisSet<S>& p) {
    require_same_space(mu.space(), p.space(), "in_effective_null_dom");
    const std::size_t n = p.space()->size();
    LpBuilder<S> b;
    std::vector<std::size_t> dom_cols;
    for (std::size_t i = 0; i < n; ++i) dom_cols.push_back(b.add_var(S(0), std::nullopt));
    detail::add_membership(b, p, dom_cols);
    for (std::size_t i = 0; i < n; ++i) {
        b.add_row(Relation::GreaterEq, mu[i], {{dom_cols[i], S(1)}});
    }
    return solve(std::move(b).build()).status == LpStatus::Optimal;
}

template <class S>
struct PolarMembership {
    bool in_polar;
    bool cap_exhausted;  // optima still rising but <= 1 at the last cap
    operator bool() const { return in_polar; }
};

template <class S>
std::vector<S> default_cap_schedule() {
    std::vector<S> caps;
    S cap(1);
    for (int k = 0; k <= 20; ++k) {
        caps.push_back(cap);
        cap *= S(2);
    }
    return caps;
}

// mu in P_eff via the bipolar: sup { mu . z : z in polar(P), z <= cap } must
// stay <= 1. The supremum over the uncapped polar is approached through a
// doubling cap schedule; it either crosses 1 (not a member), stabilizes
// (member), or outlives the schedule (member with a warning, since on finite
// spaces a finite supremum is attained).
template <class S>
PolarMembership<S> in_effective_null_polar(
    const SubProbability<S>& mu, const HypothesisSet<S>& p,
    const std::vector<S>& cap_schedule = default_cap_schedule<S>()) {
    require_same_space(mu.space(), p.space(), "in_effective_null_polar");
    if (cap_schedule.empty()) throw InvalidArgument("cap schedule is empty");
    for (std::size_t k = 1; k < cap_schedule.size(); ++k) {
        if (!(cap_schedule[k - 1] < cap_schedule[k])) {
            throw InvalidArgument("cap schedule must be strictly increasing");
        }
    }
    const std::size_t n = p.space()->size();
    const S tol = scalar_traits<S>::feasibility_tol();
    std::optional<S> previous;
    for (const auto& cap : cap_schedule) {
        LpBuilder<S> b;
        std::vector<std::size_t> z_cols;
        for (std::size_t i = 0; i < n; ++i) z_cols.push_back(b.add_var(S(0), cap, S(-mu[i])));
        std::vector<detail::Affine<S>> z_expr(n);
        for (std::size_t i = 0; i < n; ++i) z_expr[i] = {S(0), {{z_cols[i], S(1)}}};
        detail::add_support_upper_bound(b, p, z_expr, detail::Affine<S>{S(1), {}});
        auto sol = solve(std::move(b).build());
        if (sol.status != LpStatus::Optimal) {
            throw EmptyHypothesis("in_effective_null_polar: hypothesis set is empty");
        }
        S optimum = -sol.objective;
        if (optimum > S(1) + tol) return {false, false};
        if (previous && within(optimum, *previous, tol)) return {true, false};
        previous = optimum;
    }
    return {true, true};
}

// Both membership characterizations for a probability measure. On finite
// spaces the booleans must agree; callers assert, this reports.
template <class S>
std::pair<bool, bool> hull_membership_equiv(const Pmf<S>& nu, const HypothesisSet<S>& p) {
    const bool in_hull = contains(p, nu);
    const bool in_peff = in_effective_null_dom(SubProbability<S>(nu), p);
    return {in_hull, in_peff};
}

template <class S>
struct PoweredEVariable {
    EVariable<S> z;
    S inf_power;  // inf over the hull of Q of E[Z]; > 1 by construction
};

// Bounded e-variable uniformly powered against Q, built from the minimax
// optimal test: Z = phi*/level when the worst-case level is positive, else
// Z = 1 + phi*. Exists iff the hulls are TV-separated.
template <class S>
PoweredEVariable<S> make_powered_e_variable(const HypothesisSet<S>& p, const HypothesisSet<S>& q) {
    auto report = minimax_risk(p, q);
    if (report.tv <= scalar_traits<S>::feasibility_tol()) {
        throw NoPoweredEVariable("hulls are not TV-separated; no powered e-variable exists");
    }
    const S level = report.worst_level;
    std::vector<S> z(report.optimal_test.values());
    if (level <= scalar_traits<S>::feasibility_tol()) {
        for (auto& v : z) v += S(1);
    } else {
        for (auto& v : z) v /= level;
    }
    EVariable<S> ev(p.space(), std::move(z));
    std::vector<S> neg(ev.values());
    for (auto& v : neg) v = -v;
    const S inf_power = -support_value(q, neg).value;
    return {std::move(ev), inf_power};
}

}  // namespace tvtest
