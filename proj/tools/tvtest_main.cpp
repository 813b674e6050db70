// tvtest — CLI over the minimax testing library.
//
// Commands: risk, tvdist, certify, effnull, evariable, demo, sweep.
// Exit codes: 0 success, 1 input/schema error, 2 infeasible or empty
// hypothesis (incl. "no powered e-variable exists"), 3 numeric failure.
#include "tvtest/problem_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using tvtest::io::json;

struct Invocation {
    std::string command;
    std::string problem_path;
    std::string aux_path;  // certificate (certify) or measure (effnull)
    std::string example;
    std::vector<long long> sizes;
    std::map<std::string, std::string> scalar_params;
    std::map<std::string, std::vector<std::string>> list_params;
    std::string mode = "rational";
    std::string out_path;
    bool has_tolerance = false;
    double tolerance = 1e-6;
    std::vector<std::string> argv_echo;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tvtest::InvalidArgument("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class S>
tvtest::ExperimentParams<S> experiment_params(const Invocation& inv) {
    tvtest::ExperimentParams<S> params;
    for (const auto& [key, value] : inv.scalar_params) {
        params[key] = {tvtest::scalar_from_string<S>(value)};
    }
    for (const auto& [key, values] : inv.list_params) {
        std::vector<S> list;
        for (const auto& v : values) list.push_back(tvtest::scalar_from_string<S>(v));
        params[key] = std::move(list);
    }
    return params;
}

template <class S>
json run_mode(const Invocation& inv) {
    using namespace tvtest;
    std::optional<S> tol;
    if (inv.has_tolerance) {
        if constexpr (scalar_traits<S>::is_exact) {
            throw InvalidArgument("--tolerance applies to float mode only");
        } else {
            tol = inv.tolerance;
        }
    }
    std::vector<std::string> warnings;
    json payload;

    if (inv.command == "risk" || inv.command == "tvdist" || inv.command == "certify" ||
        inv.command == "effnull" || inv.command == "evariable") {
        auto problem = io::parse_problem<S>(read_file(inv.problem_path));
        const auto& p = problem.null_hypothesis();
        const auto& q = problem.alternative();

        if (inv.command == "risk") {
            payload = io::report_payload(minimax_risk(p, q, tol));
        } else if (inv.command == "tvdist") {
            payload = io::report_payload(closest_pair(p, q));
        } else if (inv.command == "certify") {
            auto doc = io::parse_preserving_numbers(read_file(inv.aux_path));
            auto cert = io::certificate_from_json<S>(doc, problem.space);
            payload = io::report_payload(check_saddle_certificate(cert.phi, cert.mu, cert.nu, p, q, tol));
        } else if (inv.command == "effnull") {
            auto doc = io::parse_preserving_numbers(read_file(inv.aux_path));
            auto mu = io::measure_from_json<S>(doc, problem.space);
            const bool dom = in_effective_null_dom(mu, p);
            auto polar = in_effective_null_polar(mu, p);
            S mass(0);
            for (const auto& v : mu.mass()) mass += v;
            payload["mass"] = io::scalar_to_node(mass);
            payload["in_effective_null_dom"] = dom;
            payload["in_effective_null_polar"] = polar.in_polar;
            payload["cap_exhausted"] = polar.cap_exhausted;
            payload["routes_agree"] = dom == polar.in_polar;
            if (polar.cap_exhausted) {
                warnings.push_back("polar cap schedule exhausted with optima still increasing");
            }
            if (within(mass, S(1), scalar_traits<S>::pmf_sum_tol())) {
                auto both = hull_membership_equiv(Pmf<S>(problem.space, mu.mass()), p);
                payload["in_hull"] = both.first;
            }
        } else {  // evariable
            auto powered = make_powered_e_variable(p, q);
            payload["z"] = io::vector_to_node(powered.z.values());
            payload["inf_power"] = io::scalar_to_node(powered.inf_power);
            payload["is_e_variable"] = is_e_variable(powered.z, p);
        }
    } else if (inv.command == "demo") {
        payload = io::report_payload(run_example<S>(inv.example, experiment_params<S>(inv)));
    } else if (inv.command == "sweep") {
        payload = io::report_payload(
            refinement_sweep<S>(inv.example, inv.sizes, experiment_params<S>(inv)));
    } else {
        throw InvalidArgument("unknown command: " + inv.command);
    }
    return io::make_report<S>(inv.command, inv.argv_echo, std::move(payload), std::move(warnings));
}

void emit(const Invocation& inv, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (inv.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(inv.out_path, std::ios::binary);
        if (!out) throw tvtest::InvalidArgument("cannot write file: " + inv.out_path);
        out << text;
    }
}

void add_common_flags(CLI::App* cmd, Invocation& inv) {
    cmd->add_option("--mode", inv.mode, "numeric mode")
        ->check(CLI::IsMember({"float", "rational"}))
        ->capture_default_str();
    cmd->add_option("--out", inv.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--tolerance", inv.tolerance,
                    "duality-gap tolerance override (float mode only)")
        ->check(CLI::PositiveNumber);
}

void add_param_flags(CLI::App* cmd, Invocation& inv) {
    for (const char* key : {"N", "n", "k", "m1", "m2", "radius"}) {
        cmd->add_option(std::string("--") + key, inv.scalar_params[key]);
    }
    for (const char* key : {"grid", "center1", "center2"}) {
        cmd->add_option(std::string("--") + key, inv.list_params[key])->delimiter(',');
    }
}

}  // namespace

int main(int argc, char** argv) {
    Invocation inv;
    for (int i = 1; i < argc; ++i) inv.argv_echo.emplace_back(argv[i]);

    CLI::App app{"minimax hypothesis testing on finite sample spaces"};
    app.require_subcommand(1);

    auto* risk = app.add_subcommand("risk", "minimax risk report for null vs alternative");
    risk->add_option("problem", inv.problem_path, "problem JSON file")->required();
    auto* tvdist = app.add_subcommand("tvdist", "TV-closest pair between the hulls");
    tvdist->add_option("problem", inv.problem_path, "problem JSON file")->required();
    auto* certify = app.add_subcommand("certify", "audit a saddle certificate");
    certify->add_option("problem", inv.problem_path, "problem JSON file")->required();
    certify->add_option("certificate", inv.aux_path, "certificate JSON file {phi, mu, nu}")->required();
    auto* effnull = app.add_subcommand("effnull", "effective-null membership of a measure");
    effnull->add_option("problem", inv.problem_path, "problem JSON file")->required();
    effnull->add_option("measure", inv.aux_path, "measure JSON file {mu}")->required();
    auto* evariable = app.add_subcommand("evariable", "powered e-variable for null vs alternative");
    evariable->add_option("problem", inv.problem_path, "problem JSON file")->required();
    auto* demo = app.add_subcommand("demo", "run a named example");
    demo->add_option("example", inv.example, "example name")->required();
    auto* sweep = app.add_subcommand("sweep", "refinement sweep over sizes");
    sweep->add_option("example", inv.example, "example name")->required();
    sweep->add_option("--sizes", inv.sizes, "comma-separated size list")
        ->required()
        ->delimiter(',');

    for (auto* cmd : {risk, tvdist, certify, effnull, evariable, demo, sweep}) {
        add_common_flags(cmd, inv);
    }
    add_param_flags(demo, inv);
    add_param_flags(sweep, inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto* cmd = app.get_subcommands().front();
    inv.command = cmd->get_name();
    inv.has_tolerance = cmd->count("--tolerance") > 0;
    // drop unset param keys so the experiments layer sees only given ones
    for (auto it = inv.scalar_params.begin(); it != inv.scalar_params.end();) {
        it = it->second.empty() ? inv.scalar_params.erase(it) : std::next(it);
    }
    for (auto it = inv.list_params.begin(); it != inv.list_params.end();) {
        it = it->second.empty() ? inv.list_params.erase(it) : std::next(it);
    }

    try {
        json report = inv.mode == "float" ? run_mode<double>(inv) : run_mode<tvtest::Rational>(inv);
        emit(inv, report);
        return 0;
    } catch (const tvtest::EmptyHypothesis& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tvtest::NoPoweredEVariable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tvtest::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tvtest::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
