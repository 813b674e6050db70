// minimax.hpp — minimax risk, optimal tests, TV-closest pairs between hulls,
// strong-duality verification and saddle certificates.
//
// The risk problem  min_phi  sup_P E[phi] + sup_Q E[1-phi]  is solved as ONE
// LP: each inner supremum over a polytope is replaced by feasibility of its
// LP dual (robust counterpart), and suprema over generator families turn
// into one row per generator. The closest-pair problem is an independent LP;
// on finite spaces strong duality forces risk + tv = 1, which is asserted on
// every call (exactly in rational mode).
#pragma once

#include "tvtest/core.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/hypothesis.hpp"
#include "tvtest/lp.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tvtest {

template <class S>
struct RiskReport {
    S risk;
    TestFn<S> optimal_test;
    S worst_level;   // sup over P of E[phi*]
    S worst_power;   // inf over Q of E[phi*]
    S tv;            // d_TV between the hulls
    std::pair<Pmf<S>, Pmf<S>> closest_pair;
    S duality_gap;   // risk + tv - 1
};

template <class S>
struct CertificateVerdict {
    bool valid;
    S risk_of_phi;
    S tv_of_pair;
    std::pair<bool, bool> membership_ok;
    S gap;  // risk_of_phi - (1 - tv_of_pair)
};

template <class S>
struct ClosestPairResult {
    Pmf<S> mu;
    Pmf<S> nu;
    S tv;
};

template <class S>
S worst_case_level(const TestFn<S>& phi, const HypothesisSet<S>& p) {
    return support_value(p, phi).value;
}

template <class S>
S worst_case_power(const TestFn<S>& phi, const HypothesisSet<S>& q) {
    return S(1) - support_value(q, phi.complement()).value;
}

namespace detail {

template <class S>
struct MinimaxLpResult {
    S risk;
    TestFn<S> phi;
};

template <class S>
MinimaxLpResult<S> solve_minimax_lp(const HypothesisSet<S>& p, const HypothesisSet<S>& q) {
    require_same_space(p.space(), q.space(), "minimax_risk");
    const std::size_t n = p.space()->size();
    LpBuilder<S> b;
    std::vector<std::size_t> phi_cols;
    for (std::size_t i = 0; i < n; ++i) phi_cols.push_back(b.add_var(S(0), S(1)));
    const std::size_t t_col = b.add_var(std::nullopt, std::nullopt, S(1));
    const std::size_t s_col = b.add_var(std::nullopt, std::nullopt, S(1));

    std::vector<Affine<S>> phi_expr(n), one_minus_phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi_expr[i] = {S(0), {{phi_cols[i], S(1)}}};
        one_minus_phi[i] = {S(1), {{phi_cols[i], S(-1)}}};
    }
    add_support_upper_bound(b, p, phi_expr, Affine<S>{S(0), {{t_col, S(1)}}});
    add_support_upper_bound(b, q, one_minus_phi, Affine<S>{S(0), {{s_col, S(1)}}});

    auto sol = solve(std::move(b).build());
    if (sol.status != LpStatus::Optimal) {
        throw EmptyHypothesis("minimax_risk: a hypothesis set is empty");
    }
    std::vector<S> phi(sol.primal.begin(), sol.primal.begin() + n);
    return {sol.objective,
            TestFn<S>::from_solver(p.space(), std::move(phi), scalar_traits<S>::feasibility_tol())};
}

}  // namespace detail

// TV-closest pair between the hulls; the infimum is attained on finite
// spaces, so an achieving pair is always returned.
template <class S>
ClosestPairResult<S> closest_pair(const HypothesisSet<S>& p, const HypothesisSet<S>& q) {
    require_same_space(p.space(), q.space(), "closest_pair");
    const std::size_t n = p.space()->size();
    LpBuilder<S> b;
    std::vector<std::size_t> mu_cols, nu_cols, e_cols;
    for (std::size_t i = 0; i < n; ++i) mu_cols.push_back(b.add_var(S(0), std::nullopt));
    for (std::size_t i = 0; i < n; ++i) nu_cols.push_back(b.add_var(S(0), std::nullopt));
    for (std::size_t i = 0; i < n; ++i) {
        e_cols.push_back(b.add_var(S(0), std::nullopt, scalar_traits<S>::from_fraction(1, 2)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        b.add_row(Relation::LessEq, S(0),
                  {{mu_cols[i], S(1)}, {nu_cols[i], S(-1)}, {e_cols[i], S(-1)}});
        b.add_row(Relation::LessEq, S(0),
                  {{nu_cols[i], S(1)}, {mu_cols[i], S(-1)}, {e_cols[i], S(-1)}});
    }
    detail::add_membership(b, p, mu_cols);
    detail::add_membership(b, q, nu_cols);

    auto sol = solve(std::move(b).build());
    if (sol.status != LpStatus::Optimal) {
        throw EmptyHypothesis("closest_pair: a hypothesis set is empty");
    }
    const S tol = scalar_traits<S>::feasibility_tol();
    std::vector<S> mu_mass(sol.primal.begin(), sol.primal.begin() + n);
    std::vector<S> nu_mass(sol.primal.begin() + n, sol.primal.begin() + 2 * n);
    auto mu = Pmf<S>::from_solver(p.space(), std::move(mu_mass), tol);
    auto nu = Pmf<S>::from_solver(q.space(), std::move(nu_mass), tol);
    return {std::move(mu), std::move(nu), sol.objective};
}

// Full risk report. Asserts risk + tv = 1 (exactly in rational mode, within
// gap_tolerance in float mode) before returning.
template <class S>
RiskReport<S> minimax_risk(const HypothesisSet<S>& p, const HypothesisSet<S>& q,
                           std::optional<S> gap_tolerance = std::nullopt) {
    auto lp_result = detail::solve_minimax_lp(p, q);
    auto pair = closest_pair(p, q);

    const S level = worst_case_level(lp_result.phi, p);
    const S power = worst_case_power(lp_result.phi, q);
    const S gap = lp_result.risk + pair.tv - S(1);
    const S tol = gap_tolerance ? *gap_tolerance : scalar_traits<S>::duality_tol();
    if (scalar_traits<S>::abs(gap) > tol) {
        throw DualityGapExceeded("minimax_risk: risk + tv - 1 = " +
                                 std::to_string(scalar_traits<S>::to_double(gap)));
    }
    return RiskReport<S>{lp_result.risk,
                         lp_result.phi,
                         level,
                         power,
                         pair.tv,
                         {pair.mu, pair.nu},
                         gap};
}

// risk + tv - 1 without the tolerance gate; exact 0 certifies strong duality.
template <class S>
S verify_strong_duality(const HypothesisSet<S>& p, const HypothesisSet<S>& q) {
    auto lp_result = detail::solve_minimax_lp(p, q);
    auto pair = closest_pair(p, q);
    return lp_result.risk + pair.tv - S(1);
}

// Third-party-checkable saddle condition: phi is minimax optimal and
// (mu, nu) is a TV-closest pair iff both measures belong to their hulls and
// risk(phi) equals 1 - tv(mu, nu). Invalid certificates yield valid = false,
// never an error.
template <class S>
CertificateVerdict<S> check_saddle_certificate(const TestFn<S>& phi, const Pmf<S>& mu,
                                               const Pmf<S>& nu, const HypothesisSet<S>& p,
                                               const HypothesisSet<S>& q,
                                               std::optional<S> gap_tolerance = std::nullopt) {
    require_same_space(p.space(), q.space(), "check_saddle_certificate");
    require_same_space(phi.space(), p.space(), "check_saddle_certificate");
    const bool mu_ok = contains(p, mu);
    const bool nu_ok = contains(q, nu);
    const S risk = worst_case_level(phi, p) + (S(1) - worst_case_power(phi, q));
    const S tv = tv_distance(mu, nu);
    const S gap = risk - (S(1) - tv);
    const S tol = gap_tolerance ? *gap_tolerance : scalar_traits<S>::duality_tol();
    const bool valid = mu_ok && nu_ok && scalar_traits<S>::abs(gap) <= tol;
    return {valid, risk, tv, {mu_ok, nu_ok}, gap};
}

}  // namespace tvtest
