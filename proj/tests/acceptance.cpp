// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// process exits nonzero if any criterion fails. Rational-mode assertions are
// exact equalities; float-mode assertions use the documented tolerances.
#include "tvtest/effnull.hpp"
#include "tvtest/experiments.hpp"
#include "tvtest/hypothesis.hpp"
#include "tvtest/minimax.hpp"

#include "support/oracles.hpp"
#include "support/random_gen.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace tvtest;
using R = Rational;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                seconds, detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

SpacePtr<R> labeled_space(std::size_t n) { return testgen::small_space(n); }

bool strong_duality_random(std::string& detail) {
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> atoms(2, 6), gens(1, 4);
    const auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        auto space = labeled_space(static_cast<std::size_t>(atoms(rng)));
        auto p = HypothesisSet<R>::generators(
            testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng))));
        auto q = HypothesisSet<R>::generators(
            testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng))));
        auto report = minimax_risk(p, q);
        if (report.risk + report.tv != R(1)) {
            detail = "gap at trial " + std::to_string(trial);
            return false;
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 30.0) {
        detail = "exceeded the 30s budget";
        return false;
    }
    detail = "200 instances, exact";
    return true;
}

bool mean_separation(std::string& detail) {
    const auto start3 = std::chrono::steady_clock::now();
    auto grid = make_space<R>({"0", "1/2", "1"}, {R(0), R(1, 2), R(1)});
    auto p = mean_at_most(grid, R(3, 10));
    auto q = mean_at_least(grid, R(7, 10));
    auto report = minimax_risk(p, q);
    if (report.risk != R(3, 5)) {
        detail = "risk != 3/5 on the 3-point grid";
        return false;
    }
    if (closest_pair(p, q).tv != R(2, 5)) {
        detail = "closest pair tv != 2/5";
        return false;
    }
    auto cert = check_saddle_certificate(TestFn<R>(grid, grid->values()),
                                         Pmf<R>(grid, {R(7, 10), R(0), R(3, 10)}),
                                         Pmf<R>(grid, {R(3, 10), R(0), R(7, 10)}), p, q);
    if (!cert.valid) {
        detail = "supplied certificate rejected";
        return false;
    }
    const double s3 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start3).count();
    if (s3 >= 1.0) {
        detail = "3-point run exceeded 1s";
        return false;
    }

    const auto start101 = std::chrono::steady_clock::now();
    std::vector<double> values;
    std::vector<std::string> labels;
    for (int j = 0; j <= 100; ++j) {
        values.push_back(j / 100.0);
        labels.push_back(std::to_string(j));
    }
    auto dense = make_space<double>(labels, values);
    auto fr = minimax_risk(mean_at_most(dense, 0.3), mean_at_least(dense, 0.7));
    if (std::abs(fr.risk - 0.6) > 1e-6) {
        detail = "101-point float risk off by more than 1e-6";
        return false;
    }
    const double s101 =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start101).count();
    if (s101 >= 10.0) {
        detail = "101-point run exceeded 10s";
        return false;
    }
    detail = "risk 3/5 exact, certificate valid, 101-point float ok";
    return true;
}

bool dirac_vs_uniform(std::string& detail) {
    for (long long n : {2, 4, 8, 16, 32}) {
        auto report = run_example<R>("dirac-vs-uniform", {{"n", {R(n)}}});
        const auto& step = report.steps.front();
        if (step.risk != R(1) || step.tv != R(0)) {
            detail = "n=" + std::to_string(n);
            return false;
        }
    }
    detail = "risk 1 and tv 0 exactly for all n";
    return true;
}

bool half_split(std::string& detail) {
    auto report = run_example<R>("half-split");
    const auto& step = report.steps.front();
    if (step.risk != R(0)) {
        detail = "risk != 0";
        return false;
    }
    if (step.worst_level != R(0) || step.worst_power != R(1)) {
        detail = "optimal test is not perfect";
        return false;
    }
    detail = "risk 0, optimal test has level 0 and power 1";
    return true;
}

bool escaping_mass(std::string& detail) {
    auto sweep = refinement_sweep<R>("escaping-mass", {2, 4, 8, 16, 100});
    for (std::size_t i = 0; i < sweep.steps.size(); ++i) {
        const long long n = std::vector<long long>{2, 4, 8, 16, 100}[i];
        if (sweep.steps[i].tv != R(1, 2) + R(1, n)) {
            detail = "tv != 1/2 + 1/N at N=" + std::to_string(n);
            return false;
        }
    }
    if (!sweep.limit_estimate ||
        scalar_traits<R>::abs(*sweep.limit_estimate - R(1, 2)) > R(1, 50)) {
        detail = "limit estimate outside 1/2 +- 0.02";
        return false;
    }
    detail = "tv exact at every truncation, limit estimate " + sweep.limit_estimate->str();
    return true;
}

bool weak_duality_suite(std::string& detail) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> atoms(2, 5), gens(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        auto space = labeled_space(static_cast<std::size_t>(atoms(rng)));
        auto fam_p = testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng)));
        auto fam_q = testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng)));
        auto mu = testgen::random_mixture(rng, fam_p);
        auto nu = testgen::random_mixture(rng, fam_q);
        auto phi = testgen::random_test(rng, space);
        if (expectation(mu, phi) + expectation(nu, phi.complement()) < R(1) - tv_distance(mu, nu)) {
            detail = "violation at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "1000 triples, zero violations";
    return true;
}

bool effective_null_equivalences(std::string& detail) {
    std::mt19937 rng(90210);
    std::uniform_int_distribution<int> atoms(2, 5), gens(1, 4), pick(0, 19);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = labeled_space(static_cast<std::size_t>(atoms(rng)));
        // alternate generator families and stock polytopes
        HypothesisSet<R> p = [&]() -> HypothesisSet<R> {
            switch (trial % 4) {
                case 0:
                case 1:
                    return HypothesisSet<R>::generators(
                        testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng))));
                case 2:
                    return mean_at_most(space, R(pick(rng), 5));  // values are 0..n-1
                default:
                    return tv_ball(testgen::random_pmf(rng, space), R(pick(rng), 40));
            }
        }();

        if (trial % 2 == 0) {
            // probability input: both routes must agree with hull membership
            auto nu = testgen::random_pmf(rng, space);
            auto [in_hull, in_peff] = hull_membership_equiv(nu, p);
            auto polar = in_effective_null_polar(SubProbability<R>(nu), p);
            if (in_hull != in_peff || in_peff != polar.in_polar) {
                detail = "probability-slice disagreement at trial " + std::to_string(trial);
                return false;
            }
        } else {
            // strict sub-probability input
            auto base = testgen::random_pmf(rng, space);
            std::vector<R> mass;
            R scale(pick(rng), 20);
            for (const auto& v : base.mass()) mass.push_back(scale * v);
            SubProbability<R> mu(space, std::move(mass));
            bool dom = in_effective_null_dom(mu, p);
            auto polar = in_effective_null_polar(mu, p);
            if (dom != polar.in_polar) {
                detail = "dom/polar disagreement at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = "200 instances, zero disagreements";
    return true;
}

bool powered_e_variables(std::string& detail) {
    std::mt19937 rng(777001);
    std::uniform_int_distribution<int> atoms(2, 4), gens(1, 3);
    int successes = 0, refusals = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto space = labeled_space(static_cast<std::size_t>(atoms(rng)));
        auto p = HypothesisSet<R>::generators(
            testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng))));
        auto q = HypothesisSet<R>::generators(
            testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng))));
        const R tv = closest_pair(p, q).tv;
        if (tv > R(0)) {
            auto powered = make_powered_e_variable(p, q);
            if (!is_e_variable(powered.z, p) || !(powered.inf_power > R(1))) {
                detail = "powered e-variable invalid at trial " + std::to_string(trial);
                return false;
            }
            ++successes;
        } else {
            try {
                make_powered_e_variable(p, q);
                detail = "construction succeeded at tv = 0, trial " + std::to_string(trial);
                return false;
            } catch (const NoPoweredEVariable&) {
                ++refusals;
            }
        }
    }

    auto s = make_space<R>({"0", "1"}, {R(0), R(1)});
    auto bern = make_powered_e_variable(
        HypothesisSet<R>::generators({Pmf<R>(s, {R(7, 10), R(3, 10)})}),
        HypothesisSet<R>::generators({Pmf<R>(s, {R(3, 10), R(7, 10)})}));
    if (bern.inf_power != R(7, 3)) {
        detail = "Bernoulli instance inf_power != 7/3";
        return false;
    }
    detail = std::to_string(successes) + " powered, " + std::to_string(refusals) +
             " refused, Bernoulli inf_power exact";
    return true;
}

bool grid_search_oracle(std::string& detail) {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> gens(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        auto space = labeled_space(3);
        auto fam_p = testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng)));
        auto fam_q = testgen::random_family(rng, space, static_cast<std::size_t>(gens(rng)));
        auto report =
            minimax_risk(HypothesisSet<R>::generators(fam_p), HypothesisSet<R>::generators(fam_q));
        R best(2);
        for (int a = 0; a <= 20; ++a) {
            for (int b = 0; b <= 20; ++b) {
                for (int c = 0; c <= 20; ++c) {
                    R r = risk_of_test(TestFn<R>(space, {R(a, 20), R(b, 20), R(c, 20)}), fam_p, fam_q);
                    if (r < best) best = r;
                }
            }
        }
        if (best < report.risk) {
            detail = "grid beat the LP at trial " + std::to_string(trial);
            return false;
        }
        if (best - report.risk > R(1, 20)) {
            detail = "grid minimum further than 0.05 at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "50 instances: grid never beats the LP, always within 0.05";
    return true;
}

bool lp_kernel(std::string& detail) {
    std::mt19937 rng(55105);
    std::uniform_int_distribution<int> dim(1, 6), rows(0, 5), eqs(0, 2);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3), rhs_num(-8, 8), ub(1, 5);
    int solved = 0;
    for (int trial = 0; trial < 100 || solved < 100; ++trial) {
        if (trial > 600) {
            detail = "could not reach 100 solvable instances";
            return false;
        }
        LpProblem<R> p;
        const int n = dim(rng);
        for (int j = 0; j < n; ++j) {
            p.cost.emplace_back(num(rng), den(rng));
            p.lower.emplace_back(R(0));
            p.upper.emplace_back(R(ub(rng)));
        }
        const int me = eqs(rng), mu = rows(rng);
        for (int i = 0; i < me; ++i) {
            std::vector<R> row;
            for (int j = 0; j < n; ++j) row.emplace_back(num(rng), 1);
            p.eq_rows.push_back(std::move(row));
            p.eq_rhs.emplace_back(rhs_num(rng), den(rng));
        }
        for (int i = 0; i < mu; ++i) {
            std::vector<R> row;
            for (int j = 0; j < n; ++j) row.emplace_back(num(rng), 1);
            p.ub_rows.push_back(std::move(row));
            p.ub_rhs.emplace_back(rhs_num(rng), den(rng));
        }
        auto oracle = testgen::enumerate_vertices_minimize(p);
        auto sol = solve(p);
        if (!oracle.feasible) {
            if (sol.status != LpStatus::Infeasible) {
                detail = "status mismatch at trial " + std::to_string(trial);
                return false;
            }
            continue;
        }
        if (sol.status != LpStatus::Optimal || sol.objective != oracle.objective) {
            detail = "objective mismatch at trial " + std::to_string(trial);
            return false;
        }
        auto rep = check_solution(p, sol);
        if (rep.max_residual() != R(0)) {
            detail = "nonzero KKT residual at trial " + std::to_string(trial);
            return false;
        }
        ++solved;
    }
    detail = std::to_string(solved) + " optimal instances, objectives and KKT exact";
    return true;
}

bool tv_as_test_supremum(std::string& detail) {
    std::mt19937 rng(161803);
    std::uniform_int_distribution<int> atoms(2, 6);
    for (int trial = 0; trial < 500; ++trial) {
        auto space = labeled_space(static_cast<std::size_t>(atoms(rng)));
        auto mu = testgen::random_pmf(rng, space);
        auto nu = testgen::random_pmf(rng, space);
        auto w = tv_witness_test(mu, nu);
        if (expectation(mu, w) - expectation(nu, w) != tv_distance(mu, nu)) {
            detail = "witness gap != half L1 at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "500 pairs, witness gap exact";
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite (exact rational mode unless stated)\n");
    criterion(1, "strong duality on 200 random generator instances", strong_duality_random);
    criterion(2, "mean separation: exact risk, certificate, dense float grid", mean_separation);
    criterion(3, "diracs vs uniform: risk 1, tv 0 for n in {2..32}", dirac_vs_uniform);
    criterion(4, "half split: perfect test", half_split);
    criterion(5, "escaping mass: tv = 1/2 + 1/N and limit estimate", escaping_mass);
    criterion(6, "weak duality on 1000 random triples", weak_duality_suite);
    criterion(7, "effective-null membership equivalences on 200 instances", effective_null_equivalences);
    criterion(8, "powered e-variables exist iff tv > 0", powered_e_variables);
    criterion(9, "grid search oracle on 50 3-atom instances", grid_search_oracle);
    criterion(10, "LP kernel vs vertex enumeration with exact KKT", lp_kernel);
    criterion(11, "tv witness attains half the L1 norm on 500 pairs", tv_as_test_supremum);
    if (failures == 0) {
        std::printf("all 11 criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
