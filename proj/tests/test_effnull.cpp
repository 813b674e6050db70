#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tvtest/effnull.hpp"

#include "support/random_gen.hpp"

#include <random>
#include <vector>

using namespace tvtest;
using R = Rational;

namespace {

SpacePtr<R> binary() { return make_space<R>({"0", "1"}, {R(0), R(1)}); }

HypothesisSet<R> single(const Pmf<R>& p) { return HypothesisSet<R>::generators({p}); }

}  // namespace

TEST_CASE("is_e_variable") {
    auto s = binary();
    auto p = single(Pmf<R>(s, {R(7, 10), R(3, 10)}));  // Bernoulli(0.3)

    CHECK(is_e_variable(EVariable<R>(s, {R(1), R(1)}), p));
    CHECK(is_e_variable(EVariable<R>(s, {R(0), R(10, 3)}), p));   // 0.3 * 10/3 = 1
    CHECK_FALSE(is_e_variable(EVariable<R>(s, {R(0), R(4)}), p)); // 1.2 > 1

    CHECK_THROWS_AS(EVariable<R>(s, {R(-1), R(0)}), InvalidMeasure);
}

TEST_CASE("sub-probability construction") {
    auto s = binary();
    CHECK_NOTHROW(SubProbability<R>(s, {R(1, 2), R(1, 2)}));
    CHECK_NOTHROW(SubProbability<R>(s, {R(0), R(0)}));
    CHECK_THROWS_AS(SubProbability<R>(s, {R(3, 5), R(3, 5)}), InvalidMeasure);
    CHECK_THROWS_AS(SubProbability<R>(s, {R(-1, 10), R(1, 2)}), InvalidMeasure);
}

TEST_CASE("domination route") {
    auto s = binary();
    auto p = single(Pmf<R>::uniform(s));

    CHECK(in_effective_null_dom(SubProbability<R>::zero(s), p));
    CHECK(in_effective_null_dom(SubProbability<R>(s, {R(3, 10), R(2, 5)}), p));
    CHECK_FALSE(in_effective_null_dom(SubProbability<R>(s, {R(3, 5), R(3, 10)}), p));
}

TEST_CASE("polar route") {
    auto s = binary();
    auto p = single(Pmf<R>::uniform(s));

    auto zero = in_effective_null_polar(SubProbability<R>::zero(s), p);
    CHECK(zero.in_polar);
    CHECK_FALSE(zero.cap_exhausted);

    auto inside = in_effective_null_polar(SubProbability<R>(s, {R(3, 10), R(2, 5)}), p);
    CHECK(inside.in_polar);
    CHECK_FALSE(inside.cap_exhausted);  // optimum stabilizes at 4/5 (Z = (0,2))

    auto outside = in_effective_null_polar(SubProbability<R>(s, {R(3, 5), R(3, 10)}), p);
    CHECK_FALSE(outside.in_polar);  // Z = (2,0) reaches 6/5

    CHECK_THROWS_AS(
        in_effective_null_polar(SubProbability<R>::zero(s), p, std::vector<R>{R(2), R(1)}),
        InvalidArgument);
}

TEST_CASE("polar and domination agree on random instances") {
    std::mt19937 rng(40118);
    std::uniform_int_distribution<int> num(0, 20);
    int members = 0, outsiders = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto s = testgen::small_space(2 + trial % 4);
        auto fam = testgen::random_family(rng, s, 1 + trial % 4);
        auto p = HypothesisSet<R>::generators(fam);

        SubProbability<R> mu = [&] {
            if (trial % 2 == 0) {
                // scaled hull member: always inside
                auto m = testgen::random_mixture(rng, fam);
                R scale(num(rng), 20);
                std::vector<R> mass;
                for (const auto& v : m.mass()) mass.push_back(scale * v);
                return SubProbability<R>(s, std::move(mass));
            }
            // random direction, usually outside
            std::vector<R> mass;
            long long total = 0;
            std::vector<long long> w(s->size());
            for (auto& v : w) {
                v = num(rng);
                total += v;
            }
            if (total == 0) total = 1;
            for (auto v : w) mass.emplace_back(v, total + total / 2 + 1);
            return SubProbability<R>(s, std::move(mass));
        }();

        bool dom = in_effective_null_dom(mu, p);
        auto polar = in_effective_null_polar(mu, p);
        REQUIRE(dom == polar.in_polar);
        (dom ? members : outsiders)++;

        // solidity: shrinking a member keeps it a member
        if (dom) {
            std::vector<R> smaller;
            for (const auto& v : mu.mass()) smaller.push_back(v * R(num(rng), 20));
            SubProbability<R> mu2(s, std::move(smaller));
            CHECK(in_effective_null_dom(mu2, p));
            CHECK(in_effective_null_polar(mu2, p).in_polar);
        }
    }
    CHECK(members > 20);
    CHECK(outsiders > 20);
}

TEST_CASE("probability slice: effective null membership is hull membership") {
    auto s4 = make_space<R>({"a", "b", "c", "d"});
    std::vector<Pmf<R>> diracs;
    for (std::size_t i = 0; i < 4; ++i) diracs.push_back(Pmf<R>::dirac(s4, i));
    auto p = HypothesisSet<R>::generators(diracs);
    auto both = hull_membership_equiv(Pmf<R>::uniform(s4), p);
    CHECK(both.first);
    CHECK(both.second);

    auto s = binary();
    auto not_member = hull_membership_equiv(Pmf<R>::dirac(s, 0), single(Pmf<R>::dirac(s, 1)));
    CHECK_FALSE(not_member.first);
    CHECK_FALSE(not_member.second);

    std::mt19937 rng(2244);
    for (int trial = 0; trial < 60; ++trial) {
        auto sp = testgen::small_space(2 + trial % 4);
        auto fam = testgen::random_family(rng, sp, 1 + trial % 4);
        auto h = HypothesisSet<R>::generators(fam);
        auto nu = (trial % 2 == 0) ? testgen::random_mixture(rng, fam) : testgen::random_pmf(rng, sp);
        auto [in_hull, in_peff] = hull_membership_equiv(nu, h);
        REQUIRE(in_hull == in_peff);
    }
}

TEST_CASE("every generator and hull member lies in the effective null") {
    std::mt19937 rng(515);
    for (int trial = 0; trial < 30; ++trial) {
        auto sp = testgen::small_space(2 + trial % 3);
        auto fam = testgen::random_family(rng, sp, 1 + trial % 3);
        auto h = HypothesisSet<R>::generators(fam);
        for (const auto& g : fam) CHECK(in_effective_null_dom(SubProbability<R>(g), h));
        CHECK(in_effective_null_dom(SubProbability<R>(testgen::random_mixture(rng, fam)), h));
    }
}

TEST_CASE("powered e-variable: Bernoulli pair") {
    auto s = binary();
    auto p = single(Pmf<R>(s, {R(7, 10), R(3, 10)}));
    auto q = single(Pmf<R>(s, {R(3, 10), R(7, 10)}));

    auto powered = make_powered_e_variable(p, q);
    CHECK(powered.z.values() == std::vector<R>{R(0), R(10, 3)});
    CHECK(powered.inf_power == R(7, 3));
    CHECK(is_e_variable(powered.z, p));

    // any strict upscaling breaks the e-variable property for the binding null
    std::vector<R> scaled;
    for (const auto& v : powered.z.values()) scaled.push_back(v * R(101, 100));
    CHECK_FALSE(is_e_variable(EVariable<R>(s, scaled), p));
}

TEST_CASE("powered e-variable: perfect separation branch") {
    auto s = make_space<R>({"a", "b"});
    auto p = single(Pmf<R>::dirac(s, 0));
    auto q = single(Pmf<R>::dirac(s, 1));
    auto powered = make_powered_e_variable(p, q);
    CHECK(powered.z.values() == std::vector<R>{R(1), R(2)});  // 1 + indicator{b}
    CHECK(powered.inf_power == R(2));
    CHECK(is_e_variable(powered.z, p));
}

TEST_CASE("powered e-variable requires TV separation") {
    auto s4 = make_space<R>({"a", "b", "c", "d"});
    std::vector<Pmf<R>> diracs;
    for (std::size_t i = 0; i < 4; ++i) diracs.push_back(Pmf<R>::dirac(s4, i));
    auto p = HypothesisSet<R>::generators(diracs);
    auto q = HypothesisSet<R>::generators({Pmf<R>::uniform(s4)});
    CHECK_THROWS_AS(make_powered_e_variable(p, q), NoPoweredEVariable);
}

TEST_CASE("powered e-variable succeeds iff tv > 0 on random instances") {
    std::mt19937 rng(71717);
    for (int trial = 0; trial < 40; ++trial) {
        auto sp = testgen::small_space(2 + trial % 3);
        auto p = HypothesisSet<R>::generators(testgen::random_family(rng, sp, 1 + trial % 3));
        auto q = HypothesisSet<R>::generators(testgen::random_family(rng, sp, 1 + (trial + 1) % 3));
        R tv = closest_pair(p, q).tv;
        if (tv > R(0)) {
            auto powered = make_powered_e_variable(p, q);
            CHECK(is_e_variable(powered.z, p));
            CHECK(powered.inf_power > R(1));
        } else {
            CHECK_THROWS_AS(make_powered_e_variable(p, q), NoPoweredEVariable);
        }
    }
}
