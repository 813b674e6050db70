#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tvtest/experiments.hpp"

#include <vector>

using namespace tvtest;
using R = Rational;

TEST_CASE("mean-separation defaults") {
    auto report = run_example<R>("mean-separation");
    REQUIRE(report.steps.size() == 1);
    const auto& step = report.steps.front();
    CHECK(step.risk == R(3, 5));
    CHECK(step.tv == R(2, 5));
    CHECK(step.duality_gap == R(0));
    CHECK(report.pass);
    CHECK(step.pair_summary.find("mu=") == 0);

    // denser grid, same separation value
    ExperimentParams<R> params;
    std::vector<R> grid;
    for (long long j = 0; j <= 10; ++j) grid.emplace_back(j, 10);
    params["grid"] = grid;
    auto dense = run_example<R>("mean-separation", params);
    CHECK(dense.steps.front().risk == R(3, 5));
    CHECK(dense.pass);
}

TEST_CASE("mean-separation with overlapping classes") {
    ExperimentParams<R> params;
    params["m1"] = {R(7, 10)};
    params["m2"] = {R(3, 10)};
    auto report = run_example<R>("mean-separation", params);
    CHECK(report.steps.front().risk == R(1));
    CHECK(report.pass);
}

TEST_CASE("dirac-vs-uniform is untestable at every size") {
    ExperimentParams<R> params;
    params["n"] = {R(10)};
    auto report = run_example<R>("dirac-vs-uniform", params);
    CHECK(report.steps.front().risk == R(1));
    CHECK(report.steps.front().tv == R(0));
    CHECK(report.pass);

    auto sweep = refinement_sweep<R>("dirac-vs-uniform", {2, 4, 8, 16});
    for (const auto& step : sweep.steps) CHECK(step.risk == R(1));
    CHECK(sweep.pass);
}

TEST_CASE("half-split yields a perfect test") {
    auto report = run_example<R>("half-split");
    const auto& step = report.steps.front();
    CHECK(step.risk == R(0));
    CHECK(step.worst_level == R(0));
    CHECK(step.worst_power == R(1));
    CHECK(report.pass);

    auto sweep = refinement_sweep<R>("half-split", {1, 2, 3});
    for (const auto& step2 : sweep.steps) CHECK(step2.risk == R(0));
    CHECK(sweep.pass);
}

TEST_CASE("escaping mass: per-step closed form and extrapolated limit") {
    ExperimentParams<R> params;
    params["N"] = {R(4)};
    auto report = run_example<R>("escaping-mass", params);
    REQUIRE(report.steps.size() == 2);  // ladder 2, 4
    CHECK(report.steps[0].tv == R(1));
    CHECK(report.steps[1].tv == R(3, 4));
    REQUIRE(report.limit_estimate.has_value());
    CHECK(*report.limit_estimate == R(1, 2));  // exact intercept of the 1/N fit
    CHECK(report.pass);
    CHECK_FALSE(report.notes.empty());

    auto sweep = refinement_sweep<R>("escaping-mass", {2, 4, 8, 16});
    std::vector<R> expected{R(1), R(3, 4), R(5, 8), R(9, 16)};
    REQUIRE(sweep.steps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(sweep.steps[i].tv == expected[i]);
        if (i) CHECK(sweep.steps[i].tv < sweep.steps[i - 1].tv);
    }
    CHECK(*sweep.limit_estimate == R(1, 2));
    CHECK(sweep.pass);
    bool trend_noted = false;
    for (const auto& note : sweep.notes) {
        if (note.find("nonincreasing") != std::string::npos) trend_noted = true;
    }
    CHECK(trend_noted);
}

TEST_CASE("tv balls: risk grows with the radius and saturates at overlap") {
    auto base = run_example<R>("tv-balls");  // centers delta_0, delta_1, radius 1/5
    CHECK(base.steps.front().risk == R(2, 5));  // 1 - (1 - 2/5)
    CHECK(base.pass);

    auto sweep = refinement_sweep<R>("tv-balls", {0, 10, 25, 50, 60});
    REQUIRE(sweep.steps.size() == 5);
    std::vector<R> expected{R(0), R(1, 5), R(1, 2), R(1), R(1)};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(sweep.steps[i].risk == expected[i]);
        if (i) CHECK(sweep.steps[i].risk >= sweep.steps[i - 1].risk);
    }
    // hulls intersect from 2r >= d on
    CHECK(sweep.steps[3].tv == R(0));
    CHECK(sweep.steps[4].tv == R(0));
    CHECK(sweep.pass);
}

TEST_CASE("symmetric null: invariants only") {
    auto report = run_example<R>("symmetric-null");
    const auto& step = report.steps.front();
    CHECK(step.duality_gap == R(0));
    CHECK(step.risk >= R(0));
    CHECK(step.risk <= R(1));
    CHECK(report.pass);

    auto sweep = refinement_sweep<R>("symmetric-null", {1, 2, 3});
    CHECK(sweep.pass);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(run_example<R>("unknown-example"), UnknownExample);
    CHECK_THROWS_AS(refinement_sweep<R>("unknown-example", {2}), UnknownExample);

    ExperimentParams<R> bad_n;
    bad_n["N"] = {R(1)};
    CHECK_THROWS_AS(run_example<R>("escaping-mass", bad_n), InvalidParams);

    ExperimentParams<R> bad_grid;
    bad_grid["grid"] = {R(0), R(1, 2), R(1)};
    CHECK_THROWS_AS(run_example<R>("half-split", bad_grid), InvalidParams);

    ExperimentParams<R> stray;
    stray["n"] = {R(4)};
    CHECK_THROWS_AS(run_example<R>("escaping-mass", stray), InvalidParams);

    ExperimentParams<R> frac;
    frac["n"] = {R(5, 2)};
    CHECK_THROWS_AS(run_example<R>("dirac-vs-uniform", frac), InvalidParams);

    CHECK_THROWS_AS(refinement_sweep<R>("escaping-mass", {}), InvalidParams);
}

TEST_CASE("float mode experiments stay within tolerance") {
    auto report = run_example<double>("mean-separation");
    CHECK(std::abs(report.steps.front().risk - 0.6) <= 1e-6);
    CHECK(report.pass);

    ExperimentParams<double> params;
    params["N"] = {8.0};
    auto esc = run_example<double>("escaping-mass", params);
    CHECK(std::abs(esc.steps.back().tv - 0.625) <= 1e-6);
    CHECK(esc.pass);
}
