// experiments.hpp — named, parameterized reproductions of the stock examples
// plus finite-truncation sweeps toward their limits. Every step runs the
// full minimax machinery, so the strong-duality invariant risk + tv = 1 is
// re-asserted at each size.
//
// Example names: mean-separation, dirac-vs-uniform, half-split,
// escaping-mass, tv-balls, symmetric-null.
#pragma once

#include "tvtest/core.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/hypothesis.hpp"
#include "tvtest/minimax.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tvtest {

template <class S>
std::string format_scalar(const S& v) {
    if constexpr (scalar_traits<S>::is_exact) {
        return v.str();
    } else {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    }
}

template <class S>
struct ExperimentStep {
    std::string label;
    S risk;
    S tv;
    S duality_gap;
    S worst_level;
    S worst_power;
    std::optional<S> expected_risk;
    std::optional<S> expected_tv;
    std::string test_summary;
    std::string pair_summary;
};

template <class S>
struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ExperimentStep<S>> steps;
    std::optional<S> limit_estimate;  // headline quantity extrapolated over steps
    std::optional<S> expected_limit;
    bool pass = true;
    std::vector<std::string> notes;
};

template <class S>
using ExperimentParams = std::map<std::string, std::vector<S>>;

namespace detail {

template <class S>
std::string summarize_vector(const std::vector<S>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_scalar(v[i]);
    }
    return out + "]";
}

template <class S>
SpacePtr<S> space_from_values(const std::vector<S>& values) {
    std::vector<std::string> labels;
    labels.reserve(values.size());
    for (const auto& v : values) labels.push_back(format_scalar(v));
    return make_space<S>(std::move(labels), values);
}

template <class S>
ExperimentStep<S> run_pair(const std::string& label, const HypothesisSet<S>& p,
                           const HypothesisSet<S>& q) {
    auto report = minimax_risk(p, q);
    ExperimentStep<S> step;
    step.label = label;
    step.risk = report.risk;
    step.tv = report.tv;
    step.duality_gap = report.duality_gap;
    step.worst_level = report.worst_level;
    step.worst_power = report.worst_power;
    step.test_summary = "phi=" + summarize_vector(report.optimal_test.values());
    step.pair_summary = "mu=" + summarize_vector(report.closest_pair.first.mass()) +
                        " nu=" + summarize_vector(report.closest_pair.second.mass());
    return step;
}

template <class S>
S param_scalar(const ExperimentParams<S>& params, const std::string& key, const S& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (it->second.size() != 1) throw InvalidParams("parameter '" + key + "' must be a single number");
    return it->second.front();
}

template <class S>
std::vector<S> param_list(const ExperimentParams<S>& params, const std::string& key,
                          std::vector<S> fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (it->second.empty()) throw InvalidParams("parameter '" + key + "' must be a nonempty list");
    return it->second;
}

template <class S>
long long param_integer(const ExperimentParams<S>& params, const std::string& key,
                        long long fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (it->second.size() != 1) throw InvalidParams("parameter '" + key + "' must be a single integer");
    double v = scalar_traits<S>::to_double(it->second.front());
    auto rounded = static_cast<long long>(v);
    if (static_cast<double>(rounded) != v) throw InvalidParams("parameter '" + key + "' must be an integer");
    return rounded;
}

template <class S>
ExperimentStep<S> step_mean_separation(const std::vector<S>& grid, const S& m1, const S& m2) {
    auto space = space_from_values(grid);
    auto p = mean_at_most(space, m1);
    auto q = mean_at_least(space, m2);
    validate(p);
    validate(q);
    auto step = run_pair("grid=" + std::to_string(grid.size()), p, q);
    bool has0 = false, has1 = false;
    for (const auto& v : grid) {
        if (v == S(0)) has0 = true;
        if (v == S(1)) has1 = true;
    }
    if (has0 && has1 && m2 >= m1) {
        step.expected_risk = m1 + S(1) - m2;  // achieved by the Bernoulli pair
        step.expected_tv = m2 - m1;
    } else if (m2 < m1) {
        step.expected_risk = S(1);  // the classes overlap
        step.expected_tv = S(0);
    }
    return step;
}

template <class S>
ExperimentStep<S> step_dirac_vs_uniform(long long n) {
    if (n < 2) throw InvalidParams("dirac-vs-uniform: n must be >= 2");
    std::vector<std::string> labels;
    for (long long i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    auto space = make_space<S>(labels);
    std::vector<Pmf<S>> diracs;
    for (long long i = 0; i < n; ++i) diracs.push_back(Pmf<S>::dirac(space, static_cast<std::size_t>(i)));
    auto p = HypothesisSet<S>::generators(diracs);
    auto q = HypothesisSet<S>::generators({Pmf<S>::uniform(space)});
    auto step = run_pair("n=" + std::to_string(n), p, q);
    step.expected_risk = S(1);  // the uniform law lies in the hull of the point masses
    step.expected_tv = S(0);
    return step;
}

template <class S>
ExperimentStep<S> step_half_split(const std::vector<S>& grid) {
    const S half = scalar_traits<S>::from_fraction(1, 2);
    std::vector<std::size_t> below, above;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == half) throw InvalidParams("half-split: grid must exclude the midpoint 1/2");
        (grid[i] < half ? below : above).push_back(i);
    }
    if (below.empty() || above.empty()) {
        throw InvalidParams("half-split: grid needs atoms on both sides of 1/2");
    }
    auto space = space_from_values(grid);
    std::vector<Pmf<S>> p_gens, q_gens;
    for (auto i : below) p_gens.push_back(Pmf<S>::dirac(space, i));
    for (auto i : above) q_gens.push_back(Pmf<S>::dirac(space, i));
    auto step = run_pair("grid=" + std::to_string(grid.size()),
                         HypothesisSet<S>::generators(p_gens), HypothesisSet<S>::generators(q_gens));
    step.expected_risk = S(0);  // the indicator of the upper half is a perfect test
    step.expected_tv = S(1);
    return step;
}

template <class S>
ExperimentStep<S> step_escaping_mass(long long truncation) {
    if (truncation < 2) throw InvalidParams("escaping-mass: N must be >= 2");
    std::vector<S> values;
    for (long long i = 0; i <= truncation; ++i) values.emplace_back(static_cast<long long>(i));
    auto space = space_from_values(values);
    std::vector<Pmf<S>> gens;
    for (long long n = 2; n <= truncation; ++n) {
        std::vector<S> mass(space->size(), S(0));
        mass[0] = scalar_traits<S>::from_fraction(1, 2) - scalar_traits<S>::from_fraction(1, n);
        mass[static_cast<std::size_t>(n)] =
            scalar_traits<S>::from_fraction(1, 2) + scalar_traits<S>::from_fraction(1, n);
        gens.emplace_back(space, std::move(mass));
    }
    auto p = HypothesisSet<S>::generators(gens);
    auto q = HypothesisSet<S>::generators({Pmf<S>::dirac(space, 0)});
    auto step = run_pair("N=" + std::to_string(truncation), p, q);
    // mass at zero is maximized by the last generator: tv = 1/2 + 1/N
    step.expected_tv =
        scalar_traits<S>::from_fraction(1, 2) + scalar_traits<S>::from_fraction(1, truncation);
    step.expected_risk = S(1) - *step.expected_tv;
    return step;
}

template <class S>
ExperimentStep<S> step_tv_balls(const Pmf<S>& c1, const Pmf<S>& c2, const S& radius) {
    auto p = tv_ball(c1, radius);
    auto q = tv_ball(c2, radius);
    auto step = run_pair("r=" + format_scalar(radius), p, q);
    // balls of radius r around centers at distance d are max(0, d - 2r) apart
    S d = tv_distance(c1, c2);
    S separation = d - S(2) * radius;
    if (separation < S(0)) separation = S(0);
    step.expected_tv = separation;
    step.expected_risk = S(1) - separation;
    return step;
}

template <class S>
ExperimentStep<S> step_symmetric_null(long long k) {
    if (k < 1) throw InvalidParams("symmetric-null: size must be >= 1");
    // atoms -k..k scaled into [-1,1], paired around zero
    std::vector<S> values;
    for (long long i = -k; i <= k; ++i) {
        values.push_back(S(static_cast<long long>(i)) / S(static_cast<long long>(k)));
    }
    auto space = space_from_values(values);
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
    for (long long i = 0; i < k; ++i) {
        pairing.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(2 * k - i));
    }
    auto p = symmetric_null(space, pairing);
    auto q = HypothesisSet<S>::generators({Pmf<S>::dirac(space, 0)});  // point mass at -1
    return run_pair("k=" + std::to_string(k), p, q);  // no stated value; invariants only
}

// Least-squares fit headline = a + b / size over the recorded steps; the
// intercept is the limit estimate. Exact in rational mode.
template <class S>
std::optional<S> extrapolate_limit(const std::vector<std::pair<long long, S>>& points) {
    if (points.empty()) return std::nullopt;
    if (points.size() == 1) return points.front().second;
    S sx(0), sy(0), sxx(0), sxy(0);
    const S count(static_cast<long long>(points.size()));
    for (const auto& [size, y] : points) {
        S x = S(1) / S(static_cast<long long>(size));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    S denom = count * sxx - sx * sx;
    if (denom == S(0)) return points.back().second;
    S slope = (count * sxy - sx * sy) / denom;
    return (sy - slope * sx) / count;
}

template <class S>
std::string trend_of(const std::vector<std::pair<long long, S>>& headline) {
    bool up = true, down = true, flat = true;
    for (std::size_t i = 1; i < headline.size(); ++i) {
        if (headline[i].second > headline[i - 1].second) { down = false; flat = false; }
        if (headline[i].second < headline[i - 1].second) { up = false; flat = false; }
    }
    if (flat) return "constant";
    if (up) return "nondecreasing";
    if (down) return "nonincreasing";
    return "mixed";
}

template <class S>
void finalize(ExperimentReport<S>& report, const std::vector<std::pair<long long, S>>& headline) {
    const S tol = scalar_traits<S>::duality_tol();
    if (headline.size() >= 2) {
        report.notes.push_back("trend over steps: " + trend_of(headline));
    }
    for (const auto& step : report.steps) {
        if (scalar_traits<S>::abs(step.duality_gap) > tol) report.pass = false;
        if (step.risk < S(0) - tol || step.risk > S(1) + tol) report.pass = false;
        if (step.expected_risk && !within(step.risk, *step.expected_risk, tol)) report.pass = false;
        if (step.expected_tv && !within(step.tv, *step.expected_tv, tol)) report.pass = false;
    }
    report.limit_estimate = extrapolate_limit(headline);
    if (report.expected_limit && report.limit_estimate && report.steps.size() >= 2) {
        // extrapolation quality gate: within 1/50 of the stated limit
        if (scalar_traits<S>::abs(*report.limit_estimate - *report.expected_limit) >
            scalar_traits<S>::from_fraction(1, 50)) {
            report.pass = false;
        }
    }
}

inline void require_known_keys(const std::string& name, const std::vector<std::string>& allowed,
                               const std::vector<std::string>& given) {
    for (const auto& key : given) {
        bool ok = false;
        for (const auto& a : allowed) {
            if (a == key) { ok = true; break; }
        }
        if (!ok) throw InvalidParams(name + ": unknown parameter '" + key + "'");
    }
}

template <class S>
std::vector<S> default_grid3() {
    return {S(0), scalar_traits<S>::from_fraction(1, 2), S(1)};
}

template <class S>
std::vector<S> default_half_split_grid() {
    return {S(0), scalar_traits<S>::from_fraction(1, 4), scalar_traits<S>::from_fraction(3, 4), S(1)};
}

template <class S>
Pmf<S> pmf_from_param(const ExperimentParams<S>& params, const std::string& key,
                      const SpacePtr<S>& space, std::size_t fallback_atom) {
    auto it = params.find(key);
    if (it == params.end()) return Pmf<S>::dirac(space, fallback_atom);
    try {
        return Pmf<S>(space, it->second);
    } catch (const Error& e) {
        throw InvalidParams("parameter '" + key + "': " + e.what());
    }
}

}  // namespace detail

template <class S>
ExperimentReport<S> run_example(const std::string& name, const ExperimentParams<S>& params = {}) {
    using namespace detail;
    ExperimentReport<S> report;
    report.name = name;
    std::vector<std::string> given_keys;
    for (const auto& [k, v] : params) {
        given_keys.push_back(k);
        report.parameters.emplace_back(k, v.size() == 1 ? format_scalar(v.front())
                                                        : summarize_vector(v));
    }
    static const std::map<std::string, std::vector<std::string>> allowed{
        {"mean-separation", {"grid", "m1", "m2"}},
        {"dirac-vs-uniform", {"n"}},
        {"half-split", {"grid"}},
        {"escaping-mass", {"N"}},
        {"tv-balls", {"grid", "center1", "center2", "radius"}},
        {"symmetric-null", {"k"}},
    };
    auto it_allowed = allowed.find(name);
    if (it_allowed == allowed.end()) throw UnknownExample("unknown example: " + name);
    require_known_keys(name, it_allowed->second, given_keys);
    std::vector<std::pair<long long, S>> headline;

    if (name == "mean-separation") {
        auto grid = param_list(params, "grid", default_grid3<S>());
        S m1 = param_scalar(params, "m1", scalar_traits<S>::from_fraction(3, 10));
        S m2 = param_scalar(params, "m2", scalar_traits<S>::from_fraction(7, 10));
        report.steps.push_back(step_mean_separation(grid, m1, m2));
        report.expected_limit = report.steps.back().expected_risk;
        headline.emplace_back(static_cast<long long>(grid.size()), report.steps.back().risk);
    } else if (name == "dirac-vs-uniform") {
        long long n = param_integer(params, "n", 10);
        report.steps.push_back(step_dirac_vs_uniform<S>(n));
        report.expected_limit = S(1);
        headline.emplace_back(n, report.steps.back().risk);
    } else if (name == "half-split") {
        auto grid = param_list(params, "grid", default_half_split_grid<S>());
        report.steps.push_back(step_half_split(grid));
        report.expected_limit = S(0);
        headline.emplace_back(static_cast<long long>(grid.size()), report.steps.back().risk);
    } else if (name == "escaping-mass") {
        long long n = param_integer(params, "N", 16);
        if (n < 2) throw InvalidParams("escaping-mass: N must be >= 2");
        // built-in doubling ladder up to N so a single run can extrapolate
        std::vector<long long> ladder;
        for (long long t = 2; t < n; t *= 2) ladder.push_back(t);
        ladder.push_back(n);
        for (auto t : ladder) {
            report.steps.push_back(step_escaping_mass<S>(t));
            headline.emplace_back(t, report.steps.back().tv);
        }
        report.expected_limit = scalar_traits<S>::from_fraction(1, 2);
        report.notes.push_back(
            "finite truncations approach the limit from above; no truncation attains it");
    } else if (name == "tv-balls") {
        auto grid = param_list(params, "grid", default_grid3<S>());
        auto space = space_from_values(grid);
        auto c1 = pmf_from_param(params, "center1", space, 0);
        auto c2 = pmf_from_param(params, "center2", space, space->size() - 1);
        S radius = param_scalar(params, "radius", scalar_traits<S>::from_fraction(1, 5));
        if (radius < S(0) || radius > S(1)) throw InvalidParams("tv-balls: radius outside [0,1]");
        report.steps.push_back(step_tv_balls(c1, c2, radius));
        headline.emplace_back(1, report.steps.back().risk);
    } else if (name == "symmetric-null") {
        long long k = param_integer(params, "k", 1);
        report.steps.push_back(step_symmetric_null<S>(k));
        headline.emplace_back(k, report.steps.back().risk);
    } else {
        throw UnknownExample("unknown example: " + name);
    }

    finalize(report, headline);
    return report;
}

template <class S>
ExperimentReport<S> refinement_sweep(const std::string& name, const std::vector<long long>& sizes,
                                     const ExperimentParams<S>& params = {}) {
    using namespace detail;
    if (sizes.empty()) throw InvalidParams("refinement_sweep: empty size list");
    ExperimentReport<S> report;
    report.name = name + " sweep";
    std::string sizes_echo;
    for (auto s : sizes) sizes_echo += (sizes_echo.empty() ? "" : ",") + std::to_string(s);
    report.parameters.emplace_back("sizes", sizes_echo);
    for (const auto& [k, v] : params) {
        report.parameters.emplace_back(k, v.size() == 1 ? format_scalar(v.front())
                                                        : summarize_vector(v));
    }

    std::vector<std::pair<long long, S>> headline;
    for (long long size : sizes) {
        if (name == "mean-separation") {
            if (size < 2) throw InvalidParams("mean-separation sweep: grid size must be >= 2");
            std::vector<S> grid;
            for (long long j = 0; j < size; ++j) {
                grid.push_back(S(static_cast<long long>(j)) / S(static_cast<long long>(size - 1)));
            }
            S m1 = param_scalar(params, "m1", scalar_traits<S>::from_fraction(3, 10));
            S m2 = param_scalar(params, "m2", scalar_traits<S>::from_fraction(7, 10));
            report.steps.push_back(step_mean_separation(grid, m1, m2));
            report.expected_limit = report.steps.back().expected_risk;
            headline.emplace_back(size, report.steps.back().risk);
        } else if (name == "dirac-vs-uniform") {
            report.steps.push_back(step_dirac_vs_uniform<S>(size));
            report.expected_limit = S(1);
            headline.emplace_back(size, report.steps.back().risk);
        } else if (name == "half-split") {
            if (size < 1) throw InvalidParams("half-split sweep: size must be >= 1");
            // 2*size atoms at j/(2*size), midpoint index skipped
            std::vector<S> grid;
            for (long long j = 0; j <= 2 * size; ++j) {
                if (j == size) continue;
                grid.push_back(S(static_cast<long long>(j)) / S(static_cast<long long>(2 * size)));
            }
            report.steps.push_back(step_half_split(grid));
            report.expected_limit = S(0);
            headline.emplace_back(size, report.steps.back().risk);
        } else if (name == "escaping-mass") {
            report.steps.push_back(step_escaping_mass<S>(size));
            report.expected_limit = scalar_traits<S>::from_fraction(1, 2);
            headline.emplace_back(size, report.steps.back().tv);
        } else if (name == "tv-balls") {
            if (size < 0 || size > 100) throw InvalidParams("tv-balls sweep: size must be in 0..100");
            auto grid = param_list(params, "grid", default_grid3<S>());
            auto space = space_from_values(grid);
            auto c1 = pmf_from_param(params, "center1", space, 0);
            auto c2 = pmf_from_param(params, "center2", space, space->size() - 1);
            S radius = S(static_cast<long long>(size)) / S(100);
            report.steps.push_back(step_tv_balls(c1, c2, radius));
            headline.emplace_back(size == 0 ? 1 : size, report.steps.back().risk);
        } else if (name == "symmetric-null") {
            report.steps.push_back(step_symmetric_null<S>(size));
            headline.emplace_back(size, report.steps.back().risk);
        } else {
            throw UnknownExample("unknown example: " + name);
        }
    }
    if (name == "escaping-mass") {
        report.notes.push_back(
            "finite truncations approach the limit from above; no truncation attains it");
    }
    finalize(report, headline);
    return report;
}

}  // namespace tvtest
