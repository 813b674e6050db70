// problem_io.hpp — JSON ingestion and report emission for the CLI.
//
// Numeric literals are captured as raw token strings during parsing, so
// rational mode sees "0.3" as exactly 3/10 rather than the nearest binary
// double. Rationals are emitted as "p/q" strings, floats as JSON numbers;
// reports round-trip losslessly.
#pragma once

#include "tvtest/core.hpp"
#include "tvtest/effnull.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/experiments.hpp"
#include "tvtest/hypothesis.hpp"
#include "tvtest/minimax.hpp"
#include "tvtest/scalar.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tvtest::io {

using json = nlohmann::json;

// Parse with numeric literals preserved as strings (integers stay integers).
// Throws SyntaxError on malformed input.
json parse_preserving_numbers(const std::string& text);

// UTC timestamp, ISO 8601. The one report field excluded from determinism.
std::string utc_timestamp();

inline constexpr int kSchemaVersion = 1;

// --- scalar <-> json ---

template <class S>
S scalar_from_node(const json& node, const std::string& path) {
    try {
        if (node.is_string()) return scalar_from_string<S>(node.get<std::string>());
        if (node.is_number_integer()) return S(node.get<long long>());
        if (node.is_number_unsigned()) return S(static_cast<long long>(node.get<unsigned long long>()));
        if (node.is_number_float()) {
            if constexpr (scalar_traits<S>::is_exact) {
                throw SchemaError(path, "expected an exact numeric literal");
            } else {
                return node.get<double>();
            }
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, std::string("malformed number: ") + e.what());
    }
    throw SchemaError(path, "expected a number");
}

template <class S>
json scalar_to_node(const S& v) {
    if constexpr (scalar_traits<S>::is_exact) {
        return json(v.str());
    } else {
        return json(v);
    }
}

template <class S>
std::vector<S> vector_from_node(const json& node, const std::string& path) {
    if (!node.is_array()) throw SchemaError(path, "expected an array of numbers");
    std::vector<S> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(scalar_from_node<S>(node[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

template <class S>
json vector_to_node(const std::vector<S>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(scalar_to_node(x));
    return arr;
}

// --- problem files ---

template <class S>
struct Problem {
    SpacePtr<S> space;
    std::map<std::string, HypothesisSet<S>> hypotheses;
    std::string null_name;
    std::string alternative_name;

    const HypothesisSet<S>& null_hypothesis() const { return hypotheses.at(null_name); }
    const HypothesisSet<S>& alternative() const { return hypotheses.at(alternative_name); }
};

namespace detail {

inline const json& expect_field(const json& node, const std::string& key, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    auto it = node.find(key);
    if (it == node.end()) throw SchemaError(path + "." + key, "missing required field");
    return *it;
}

template <class S>
Pmf<S> pmf_from_node(const json& node, const SpacePtr<S>& space, const std::string& path) {
    auto mass = vector_from_node<S>(node, path);
    if (mass.size() != space->size()) {
        throw SchemaError(path, "length must equal the atom count");
    }
    try {
        return Pmf<S>(space, std::move(mass));
    } catch (const Error& e) {
        throw ValidationError(path, e.what());
    }
}

template <class S>
HypothesisSet<S> hypothesis_from_node(const json& node, const SpacePtr<S>& space,
                                      const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const std::size_t n = space->size();

    if (node.contains("generators")) {
        const json& gens = node["generators"];
        if (!gens.is_array() || gens.empty()) {
            throw SchemaError(path + ".generators", "expected a nonempty array of pmf rows");
        }
        std::vector<Pmf<S>> family;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            family.push_back(
                pmf_from_node<S>(gens[k], space, path + ".generators[" + std::to_string(k) + "]"));
        }
        return HypothesisSet<S>::generators(std::move(family));
    }
    if (node.contains("constraints")) {
        std::size_t aux = 0;
        if (node.contains("aux")) {
            const json& a = node["aux"];
            if (!a.is_number_integer() && !a.is_number_unsigned()) {
                throw SchemaError(path + ".aux", "expected a nonnegative integer");
            }
            long long v = a.get<long long>();
            if (v < 0) throw SchemaError(path + ".aux", "expected a nonnegative integer");
            aux = static_cast<std::size_t>(v);
        }
        const json& rows = node["constraints"];
        if (!rows.is_array()) throw SchemaError(path + ".constraints", "expected an array");
        std::vector<LinearConstraint<S>> constraints;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string rpath = path + ".constraints[" + std::to_string(r) + "]";
            const json& row = rows[r];
            auto coeffs = vector_from_node<S>(expect_field(row, "coeffs", rpath), rpath + ".coeffs");
            if (coeffs.size() != n + aux) {
                throw SchemaError(rpath + ".coeffs", "length must be atom count + aux");
            }
            const json& rel_node = expect_field(row, "rel", rpath);
            if (!rel_node.is_string()) throw SchemaError(rpath + ".rel", "expected \"<=\", \"=\" or \">=\"");
            const std::string rel = rel_node.get<std::string>();
            Relation relation;
            if (rel == "<=") relation = Relation::LessEq;
            else if (rel == "=") relation = Relation::Eq;
            else if (rel == ">=") relation = Relation::GreaterEq;
            else throw SchemaError(rpath + ".rel", "expected \"<=\", \"=\" or \">=\"");
            S rhs = scalar_from_node<S>(expect_field(row, "rhs", rpath), rpath + ".rhs");
            constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
        }
        return HypothesisSet<S>::polytope(space, aux, std::move(constraints));
    }
    if (node.contains("mean_at_most")) {
        if (!space->has_values()) throw ValidationError(path, "space has no embedding values");
        return mean_at_most(space, scalar_from_node<S>(node["mean_at_most"], path + ".mean_at_most"));
    }
    if (node.contains("mean_at_least")) {
        if (!space->has_values()) throw ValidationError(path, "space has no embedding values");
        return mean_at_least(space, scalar_from_node<S>(node["mean_at_least"], path + ".mean_at_least"));
    }
    if (node.contains("tv_ball")) {
        const json& ball = node["tv_ball"];
        auto center = pmf_from_node<S>(expect_field(ball, "center", path + ".tv_ball"),
                                       space, path + ".tv_ball.center");
        S radius = scalar_from_node<S>(expect_field(ball, "radius", path + ".tv_ball"),
                                       path + ".tv_ball.radius");
        try {
            return tv_ball(center, radius);
        } catch (const Error& e) {
            throw ValidationError(path + ".tv_ball", e.what());
        }
    }
    if (node.contains("symmetric")) {
        const json& pairs = node["symmetric"];
        if (!pairs.is_array()) throw SchemaError(path + ".symmetric", "expected an array of index pairs");
        std::vector<std::pair<std::size_t, std::size_t>> pairing;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const std::string ppath = path + ".symmetric[" + std::to_string(k) + "]";
            const json& pr = pairs[k];
            if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() ||
                !pr[1].is_number_integer()) {
                throw SchemaError(ppath, "expected a pair of atom indices");
            }
            long long i = pr[0].get<long long>(), j = pr[1].get<long long>();
            if (i < 0 || j < 0) throw SchemaError(ppath, "indices must be nonnegative");
            pairing.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        try {
            return symmetric_null(space, pairing);
        } catch (const Error& e) {
            throw ValidationError(path + ".symmetric", e.what());
        }
    }
    throw SchemaError(path,
                      "hypothesis must contain one of: generators, constraints, mean_at_most, "
                      "mean_at_least, tv_ball, symmetric");
}

inline void check_schema_version(const json& doc, const std::string& what) {
    if (!doc.is_object()) throw SchemaError("$", "expected a JSON object for " + what);
    if (doc.contains("schema_version")) {
        const json& v = doc["schema_version"];
        if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
            throw SchemaError("$.schema_version", "unsupported schema version");
        }
    }
}

}  // namespace detail

// Full problem ingestion: schema checks (SchemaError with JSON path), value
// checks (ValidationError), then a feasibility pass over every hypothesis
// (EmptyHypothesis).
template <class S>
Problem<S> problem_from_json(const json& doc) {
    detail::check_schema_version(doc, "problem file");
    const json& space_node = detail::expect_field(doc, "space", "$");
    const json& atoms_node = detail::expect_field(space_node, "atoms", "$.space");
    if (!atoms_node.is_array() || atoms_node.empty()) {
        throw SchemaError("$.space.atoms", "expected a nonempty array of labels");
    }
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < atoms_node.size(); ++i) {
        if (!atoms_node[i].is_string()) {
            throw SchemaError("$.space.atoms[" + std::to_string(i) + "]", "expected a string");
        }
        atoms.push_back(atoms_node[i].get<std::string>());
    }
    Problem<S> problem;
    try {
        if (space_node.contains("values")) {
            auto values = vector_from_node<S>(space_node["values"], "$.space.values");
            problem.space = make_space<S>(std::move(atoms), std::move(values));
        } else {
            problem.space = make_space<S>(std::move(atoms));
        }
    } catch (const Error& e) {
        throw ValidationError("$.space", e.what());
    }

    const json& hyps = detail::expect_field(doc, "hypotheses", "$");
    if (!hyps.is_object() || hyps.empty()) {
        throw SchemaError("$.hypotheses", "expected a nonempty object");
    }
    for (auto it = hyps.begin(); it != hyps.end(); ++it) {
        problem.hypotheses.emplace(
            it.key(),
            detail::hypothesis_from_node<S>(it.value(), problem.space, "$.hypotheses." + it.key()));
    }

    auto name_field = [&](const char* key) {
        const json& node = detail::expect_field(doc, key, "$");
        if (!node.is_string()) throw SchemaError(std::string("$.") + key, "expected a hypothesis name");
        std::string name = node.get<std::string>();
        if (!problem.hypotheses.count(name)) {
            throw ValidationError(std::string("$.") + key, "references unknown hypothesis '" + name + "'");
        }
        return name;
    };
    problem.null_name = name_field("null");
    problem.alternative_name = name_field("alternative");

    for (const auto& [name, h] : problem.hypotheses) {
        try {
            validate(h);
        } catch (const EmptyHypothesis& e) {
            throw EmptyHypothesis("hypothesis '" + name + "': " + e.what());
        }
    }
    return problem;
}

template <class S>
Problem<S> parse_problem(const std::string& text) {
    return problem_from_json<S>(parse_preserving_numbers(text));
}

// Certificate file: {"phi": [...], "mu": [...], "nu": [...]}.
template <class S>
struct Certificate {
    TestFn<S> phi;
    Pmf<S> mu;
    Pmf<S> nu;
};

template <class S>
Certificate<S> certificate_from_json(const json& doc, const SpacePtr<S>& space) {
    detail::check_schema_version(doc, "certificate file");
    auto phi_values = vector_from_node<S>(detail::expect_field(doc, "phi", "$"), "$.phi");
    if (phi_values.size() != space->size()) throw SchemaError("$.phi", "length must equal atom count");
    TestFn<S> phi = [&] {
        try {
            return TestFn<S>(space, std::move(phi_values));
        } catch (const Error& e) {
            throw ValidationError("$.phi", e.what());
        }
    }();
    auto mu = detail::pmf_from_node<S>(detail::expect_field(doc, "mu", "$"), space, "$.mu");
    auto nu = detail::pmf_from_node<S>(detail::expect_field(doc, "nu", "$"), space, "$.nu");
    return {std::move(phi), std::move(mu), std::move(nu)};
}

// Measure file for effective-null queries: {"mu": [...]} with mass <= 1.
template <class S>
SubProbability<S> measure_from_json(const json& doc, const SpacePtr<S>& space) {
    detail::check_schema_version(doc, "measure file");
    auto mass = vector_from_node<S>(detail::expect_field(doc, "mu", "$"), "$.mu");
    if (mass.size() != space->size()) throw SchemaError("$.mu", "length must equal atom count");
    try {
        return SubProbability<S>(space, std::move(mass));
    } catch (const Error& e) {
        throw ValidationError("$.mu", e.what());
    }
}

// --- report payloads ---

template <class S>
json report_payload(const RiskReport<S>& r) {
    json out;
    out["risk"] = scalar_to_node(r.risk);
    out["optimal_test"] = vector_to_node(r.optimal_test.values());
    out["worst_level"] = scalar_to_node(r.worst_level);
    out["worst_power"] = scalar_to_node(r.worst_power);
    out["tv"] = scalar_to_node(r.tv);
    out["closest_pair"] = {{"mu", vector_to_node(r.closest_pair.first.mass())},
                           {"nu", vector_to_node(r.closest_pair.second.mass())}};
    out["duality_gap"] = scalar_to_node(r.duality_gap);
    return out;
}

template <class S>
json report_payload(const ClosestPairResult<S>& r) {
    json out;
    out["tv"] = scalar_to_node(r.tv);
    out["mu"] = vector_to_node(r.mu.mass());
    out["nu"] = vector_to_node(r.nu.mass());
    return out;
}

template <class S>
json report_payload(const CertificateVerdict<S>& v) {
    json out;
    out["valid"] = v.valid;
    out["risk_of_phi"] = scalar_to_node(v.risk_of_phi);
    out["tv_of_pair"] = scalar_to_node(v.tv_of_pair);
    out["membership_mu"] = v.membership_ok.first;
    out["membership_nu"] = v.membership_ok.second;
    out["gap"] = scalar_to_node(v.gap);
    return out;
}

template <class S>
json report_payload(const ExperimentReport<S>& r) {
    json out;
    out["name"] = r.name;
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    out["parameters"] = params;
    json steps = json::array();
    for (const auto& s : r.steps) {
        json step;
        step["label"] = s.label;
        step["risk"] = scalar_to_node(s.risk);
        step["tv"] = scalar_to_node(s.tv);
        step["duality_gap"] = scalar_to_node(s.duality_gap);
        step["worst_level"] = scalar_to_node(s.worst_level);
        step["worst_power"] = scalar_to_node(s.worst_power);
        if (s.expected_risk) step["expected_risk"] = scalar_to_node(*s.expected_risk);
        if (s.expected_tv) step["expected_tv"] = scalar_to_node(*s.expected_tv);
        step["test_summary"] = s.test_summary;
        step["pair_summary"] = s.pair_summary;
        steps.push_back(std::move(step));
    }
    out["steps"] = std::move(steps);
    if (r.limit_estimate) out["limit_estimate"] = scalar_to_node(*r.limit_estimate);
    if (r.expected_limit) out["expected_limit"] = scalar_to_node(*r.expected_limit);
    out["pass"] = r.pass;
    out["notes"] = r.notes;
    return out;
}

template <class S>
json make_report(const std::string& command, const std::vector<std::string>& argv_echo,
                 json payload, std::vector<std::string> warnings = {}) {
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = command;
    report["argv"] = argv_echo;
    report["mode"] = scalar_traits<S>::mode_name();
    report["timestamp"] = utc_timestamp();
    report["warnings"] = warnings;
    report["result"] = std::move(payload);
    return report;
}

// Lossless re-parse of an emitted report; emit(parse(emit(r))) == emit(r).
json parse_report(const std::string& text);

}  // namespace tvtest::io
