// core.hpp — finite sample spaces and the measure/test primitives everything
// else consumes. All types are immutable values after construction; all
// operations are pure functions, so concurrent use needs no synchronization.
#pragma once

#include "tvtest/errors.hpp"
#include "tvtest/scalar.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tvtest {

// A finite set of labeled atoms, optionally carrying one numeric value per
// atom (the embedding used by moment constraints). Atom order is declaration
// order; every vector in the library indexes accordingly.
template <class S>
class SampleSpace {
  public:
    explicit SampleSpace(std::vector<std::string> atoms)
        : SampleSpace(std::move(atoms), std::vector<S>{}) {}

    SampleSpace(std::vector<std::string> atoms, std::vector<S> values)
        : atoms_(std::move(atoms)), values_(std::move(values)) {
        if (atoms_.empty()) throw InvalidArgument("sample space needs at least one atom");
        std::unordered_set<std::string> seen;
        for (const auto& a : atoms_) {
            if (!seen.insert(a).second) throw InvalidArgument("duplicate atom label: " + a);
        }
        if (!values_.empty() && values_.size() != atoms_.size()) {
            throw DimensionMismatch("values must have one entry per atom");
        }
    }

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    bool has_values() const { return !values_.empty(); }
    const std::vector<S>& values() const {
        if (!has_values()) throw InvalidArgument("sample space has no embedding values");
        return values_;
    }

    friend bool operator==(const SampleSpace& a, const SampleSpace& b) {
        return a.atoms_ == b.atoms_ && a.values_ == b.values_;
    }

  private:
    std::vector<std::string> atoms_;
    std::vector<S> values_;
};

template <class S>
using SpacePtr = std::shared_ptr<const SampleSpace<S>>;

template <class S>
SpacePtr<S> make_space(std::vector<std::string> atoms) {
    return std::make_shared<const SampleSpace<S>>(std::move(atoms));
}

template <class S>
SpacePtr<S> make_space(std::vector<std::string> atoms, std::vector<S> values) {
    return std::make_shared<const SampleSpace<S>>(std::move(atoms), std::move(values));
}

template <class S>
bool same_space(const SpacePtr<S>& a, const SpacePtr<S>& b) {
    return a == b || (a && b && *a == *b);
}

template <class S>
void require_same_space(const SpacePtr<S>& a, const SpacePtr<S>& b, const char* where) {
    if (!same_space(a, b)) throw DimensionMismatch(std::string(where) + ": mismatched sample spaces");
}

// Probability mass function. Rational mode requires the mass to sum to 1
// exactly; float mode accepts |sum - 1| <= 1e-12 and renormalizes.
template <class S>
class Pmf {
  public:
    Pmf(SpacePtr<S> space, std::vector<S> mass) : space_(std::move(space)), mass_(std::move(mass)) {
        check_dimension();
        for (const auto& m : mass_) {
            if (m < S(0)) throw InvalidMeasure("pmf entry is negative");
        }
        S sum(0);
        for (const auto& m : mass_) sum += m;
        if constexpr (scalar_traits<S>::is_exact) {
            if (sum != S(1)) throw InvalidMeasure("pmf mass must sum to 1 exactly");
        } else {
            if (!within(sum, S(1), scalar_traits<S>::pmf_sum_tol())) {
                throw InvalidMeasure("pmf mass must sum to 1 within 1e-12");
            }
            if (sum != S(1)) {
                for (auto& m : mass_) m /= sum;
            }
        }
    }

    // Accepts solver output: entries >= -tol are clamped to 0 and the vector
    // is renormalized, provided the total is within tol of 1. Exact mode
    // forwards to the strict constructor.
    static Pmf from_solver(SpacePtr<S> space, std::vector<S> mass, const S& tol) {
        if constexpr (!scalar_traits<S>::is_exact) {
            S sum(0);
            for (auto& m : mass) {
                if (m < S(0)) {
                    if (m < -tol) throw InvalidMeasure("solver pmf entry below -tolerance");
                    m = S(0);
                }
                sum += m;
            }
            if (!within(sum, S(1), tol)) throw InvalidMeasure("solver pmf mass not within tolerance of 1");
            for (auto& m : mass) m /= sum;
        }
        return Pmf(std::move(space), std::move(mass));
    }

    static Pmf dirac(SpacePtr<S> space, std::size_t atom_index) {
        std::vector<S> mass(space->size(), S(0));
        mass.at(atom_index) = S(1);
        return Pmf(std::move(space), std::move(mass));
    }

    static Pmf uniform(SpacePtr<S> space) {
        const std::size_t n = space->size();
        std::vector<S> mass(n);
        for (auto& m : mass) m = S(1) / S(static_cast<long long>(n));
        return Pmf(std::move(space), std::move(mass));
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& mass() const { return mass_; }
    const S& operator[](std::size_t i) const { return mass_[i]; }
    std::size_t size() const { return mass_.size(); }

    friend bool operator==(const Pmf& a, const Pmf& b) {
        return same_space(a.space_, b.space_) && a.mass_ == b.mass_;
    }

  private:
    void check_dimension() const {
        if (mass_.size() != space_->size()) throw DimensionMismatch("pmf dimension != atom count");
    }

    SpacePtr<S> space_;
    std::vector<S> mass_;
};

// Finite signed measure; total mass unconstrained.
template <class S>
class SignedMeasure {
  public:
    SignedMeasure(SpacePtr<S> space, std::vector<S> mass)
        : space_(std::move(space)), mass_(std::move(mass)) {
        if (mass_.size() != space_->size()) {
            throw DimensionMismatch("signed measure dimension != atom count");
        }
    }

    explicit SignedMeasure(const Pmf<S>& p) : space_(p.space()), mass_(p.mass()) {}

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& mass() const { return mass_; }
    const S& operator[](std::size_t i) const { return mass_[i]; }
    std::size_t size() const { return mass_.size(); }

  private:
    SpacePtr<S> space_;
    std::vector<S> mass_;
};

// A [0,1]-valued test; entry i is the rejection probability at atom i.
template <class S>
class TestFn {
  public:
    TestFn(SpacePtr<S> space, std::vector<S> phi) : space_(std::move(space)), phi_(std::move(phi)) {
        if (phi_.size() != space_->size()) throw DimensionMismatch("test dimension != atom count");
        for (const auto& v : phi_) {
            if (v < S(0) || v > S(1)) throw InvalidMeasure("test value outside [0,1]");
        }
    }

    // Solver output may overshoot [0,1] by tiny residuals; clamp within tol.
    static TestFn from_solver(SpacePtr<S> space, std::vector<S> phi, const S& tol) {
        for (auto& v : phi) {
            if (v < S(0)) {
                if (v < -tol) throw InvalidMeasure("solver test value below -tolerance");
                v = S(0);
            } else if (v > S(1)) {
                if (v > S(1) + tol) throw InvalidMeasure("solver test value above 1+tolerance");
                v = S(1);
            }
        }
        return TestFn(std::move(space), std::move(phi));
    }

    static TestFn zero(SpacePtr<S> space) {
        std::vector<S> phi(space->size(), S(0));
        return TestFn(std::move(space), std::move(phi));
    }

    static TestFn one(SpacePtr<S> space) {
        std::vector<S> phi(space->size(), S(1));
        return TestFn(std::move(space), std::move(phi));
    }

    static TestFn indicator(SpacePtr<S> space, const std::vector<std::size_t>& atom_indices) {
        std::vector<S> phi(space->size(), S(0));
        for (auto i : atom_indices) phi.at(i) = S(1);
        return TestFn(std::move(space), std::move(phi));
    }

    TestFn complement() const {
        std::vector<S> phi(phi_.size());
        for (std::size_t i = 0; i < phi_.size(); ++i) phi[i] = S(1) - phi_[i];
        return TestFn(space_, std::move(phi));
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::vector<S>& values() const { return phi_; }
    const S& operator[](std::size_t i) const { return phi_[i]; }
    std::size_t size() const { return phi_.size(); }

    friend bool operator==(const TestFn& a, const TestFn& b) {
        return same_space(a.space_, b.space_) && a.phi_ == b.phi_;
    }

  private:
    SpacePtr<S> space_;
    std::vector<S> phi_;
};

// Convex combination of pmfs over a shared space.
template <class S>
Pmf<S> mix(const std::vector<S>& weights, const std::vector<Pmf<S>>& pmfs) {
    if (weights.size() != pmfs.size()) throw DimensionMismatch("mix: one weight per pmf");
    if (pmfs.empty()) throw InvalidArgument("mix: empty family");
    S wsum(0);
    for (const auto& w : weights) {
        if (w < S(0)) throw InvalidArgument("mix: negative weight");
        wsum += w;
    }
    if constexpr (scalar_traits<S>::is_exact) {
        if (wsum != S(1)) throw InvalidArgument("mix: weights must sum to 1");
    } else {
        if (!within(wsum, S(1), scalar_traits<S>::pmf_sum_tol())) {
            throw InvalidArgument("mix: weights must sum to 1");
        }
    }
    const auto& space = pmfs.front().space();
    std::vector<S> mass(space->size(), S(0));
    for (std::size_t k = 0; k < pmfs.size(); ++k) {
        require_same_space(space, pmfs[k].space(), "mix");
        for (std::size_t i = 0; i < mass.size(); ++i) mass[i] += weights[k] * pmfs[k][i];
    }
    return Pmf<S>(space, std::move(mass));
}

// E_m[f] as a plain dot product; overloads cover the measure/test pairings.
template <class S>
S expectation(const Pmf<S>& m, const std::vector<S>& f) {
    return dot(m.mass(), f);
}

template <class S>
S expectation(const SignedMeasure<S>& m, const std::vector<S>& f) {
    return dot(m.mass(), f);
}

template <class S>
S expectation(const Pmf<S>& m, const TestFn<S>& f) {
    require_same_space(m.space(), f.space(), "expectation");
    return dot(m.mass(), f.values());
}

template <class S>
S expectation(const SignedMeasure<S>& m, const TestFn<S>& f) {
    require_same_space(m.space(), f.space(), "expectation");
    return dot(m.mass(), f.values());
}

// Half the L1 distance; always in [0,1] for pmfs.
template <class S>
S tv_distance(const Pmf<S>& mu, const Pmf<S>& nu) {
    require_same_space(mu.space(), nu.space(), "tv_distance");
    S acc(0);
    for (std::size_t i = 0; i < mu.size(); ++i) acc += scalar_traits<S>::abs(mu[i] - nu[i]);
    return acc / S(2);
}

// Indicator of {i : mu_i > nu_i}. Ties get 0. The gap
// E_mu[phi] - E_nu[phi] attains tv_distance(mu, nu).
template <class S>
TestFn<S> tv_witness_test(const Pmf<S>& mu, const Pmf<S>& nu) {
    require_same_space(mu.space(), nu.space(), "tv_witness_test");
    std::vector<S> phi(mu.size(), S(0));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > nu[i]) phi[i] = S(1);
    }
    return TestFn<S>(mu.space(), std::move(phi));
}

// Worst-case type-I plus worst-case type-II error of a single test against
// finite families of levels (nulls) and powers (alternatives).
template <class S>
S risk_of_test(const TestFn<S>& phi, const std::vector<Pmf<S>>& levels,
               const std::vector<Pmf<S>>& powers) {
    if (levels.empty() || powers.empty()) throw InvalidArgument("risk_of_test: empty family");
    S worst_level = expectation(levels.front(), phi);
    for (std::size_t k = 1; k < levels.size(); ++k) {
        S v = expectation(levels[k], phi);
        if (v > worst_level) worst_level = v;
    }
    const TestFn<S> reject_complement = phi.complement();
    S worst_miss = expectation(powers.front(), reject_complement);
    for (std::size_t k = 1; k < powers.size(); ++k) {
        S v = expectation(powers[k], reject_complement);
        if (v > worst_miss) worst_miss = v;
    }
    return worst_level + worst_miss;
}

}  // namespace tvtest
