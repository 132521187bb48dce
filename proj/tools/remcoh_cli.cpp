// remcoh - figure data and single protocol runs from the command line
//
//   remcoh fig1 [--steps N]
//   remcoh fig2 [--p-steps N] [--gamma-steps N]
//   remcoh fig3 [--gamma-steps N] [--delta-steps N] [--p P]
//   remcoh fig4 [--p-steps N] [--q-steps N]
//   remcoh run --scenario {noiseless,A,B,C} [--p P] [--gamma G] [--delta D] [--q Q]
//              [--alpha A] [--beta B]
//
// Common: --out PATH (default stdout), --format {csv,json}, --config FILE
// (key=value lines; command-line flags win).  Exit codes: 0 success,
// 2 usage error, 1 runtime error.

#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "remcoh/remcoh.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 1;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// "0.6", "-1e-3" or "(re,im)".
remcoh::Complex parse_complex(const std::string& text) {
    std::istringstream is(text);
    remcoh::Complex z;
    if (!text.empty() && text.front() == '(') {
        is >> z;
    } else {
        double re = 0.0;
        is >> re;
        z = re;
    }
    if (!is || !(is >> std::ws).eof()) throw UsageError("cannot parse amplitude '" + text + "'");
    return z;
}

struct Options {
    std::string format = "csv";
    std::string out;
    int steps = 101;
    int p_steps = 41;
    int q_steps = 41;
    int gamma_steps = 41;
    int delta_steps = 21;
    double p = 0.25;
    double q = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    std::string alpha = "0.70710678118654752";
    std::string beta = "0.70710678118654752";
    std::string scenario;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Remote creation of coherence through a quantum SWITCH of noisy channels"};
    app.set_version_flag("--version", remcoh::kToolVersion);
    app.set_config("--config", "", "plain key=value file; flags on the command line take precedence");
    app.require_subcommand(1);

    Options o;
    std::map<std::string, CLI::Option*> opt;
    opt["--format"] = app.add_option("--format", o.format, "output format")
                          ->check(CLI::IsMember({"csv", "json"}))
                          ->capture_default_str();
    opt["--out"] = app.add_option("--out", o.out, "output path (default: stdout)");
    opt["--steps"] = app.add_option("--steps", o.steps, "p grid resolution (fig1)")->capture_default_str();
    opt["--p-steps"] = app.add_option("--p-steps", o.p_steps, "p grid resolution (fig2, fig4)")->capture_default_str();
    opt["--q-steps"] = app.add_option("--q-steps", o.q_steps, "q grid resolution (fig4)")->capture_default_str();
    opt["--gamma-steps"] =
        app.add_option("--gamma-steps", o.gamma_steps, "gamma grid resolution (fig2: 41, fig3: 21)");
    opt["--delta-steps"] =
        app.add_option("--delta-steps", o.delta_steps, "delta grid resolution (fig3)")->capture_default_str();
    opt["--p"] = app.add_option("--p", o.p, "control weight p (run; fig3 default 0.25)");
    opt["--q"] = app.add_option("--q", o.q, "partial depolarizing strength (run, scenario C)");
    opt["--gamma"] = app.add_option("--gamma", o.gamma, "unitary angle gamma (run, scenario B)");
    opt["--delta"] = app.add_option("--delta", o.delta, "unitary phase delta (run, scenario B)");
    opt["--alpha"] = app.add_option("--alpha", o.alpha, "target amplitude alpha, real or (re,im)");
    opt["--beta"] = app.add_option("--beta", o.beta, "target amplitude beta, real or (re,im)");
    opt["--scenario"] = app.add_option("--scenario", o.scenario, "noiseless | A | B | C");

    const std::map<std::string, std::set<std::string>> allowed{
        {"fig1", {"--steps"}},
        {"fig2", {"--p-steps", "--gamma-steps"}},
        {"fig3", {"--gamma-steps", "--delta-steps", "--p"}},
        {"fig4", {"--p-steps", "--q-steps"}},
        {"run", {"--scenario", "--p", "--q", "--gamma", "--delta", "--alpha", "--beta"}},
    };
    std::map<std::string, CLI::App*> subs;
    subs["fig1"] = app.add_subcommand("fig1", "discord of the conditioned state, two complete depolarizing channels");
    subs["fig2"] = app.add_subcommand("fig2", "second partial-transpose eigenvalue, depolarizing + unitary");
    subs["fig3"] = app.add_subcommand("fig3", "closed-form vs brute-force discord, depolarizing + unitary");
    subs["fig4"] = app.add_subcommand("fig4", "coherence advantage, two partial depolarizing channels");
    subs["run"] = app.add_subcommand("run", "single protocol run, full report");
    for (auto& [name, sub] : subs) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    std::string payload;
    try {
        const std::set<std::string> common{"--format", "--out"};
        for (const auto& [flag, option] : opt) {
            if (option->count() > 0 && !common.count(flag) && !allowed.at(command).count(flag)) {
                throw UsageError(flag + " is not accepted by '" + command + "'");
            }
        }
        if (command == "fig2" && opt["--gamma-steps"]->count() == 0) o.gamma_steps = 41;
        if (command == "fig3" && opt["--gamma-steps"]->count() == 0) o.gamma_steps = 21;
        for (int s : {o.steps, o.p_steps, o.q_steps, o.gamma_steps, o.delta_steps}) {
            if (s < 2) throw UsageError("grid resolutions must be at least 2");
        }

        std::ostringstream os;
        if (command == "run") {
            if (o.scenario.empty()) throw UsageError("run requires --scenario");
            remcoh::ScenarioParams params;
            try {
                params.scenario = remcoh::scenario_from_string(o.scenario);
                params.target = remcoh::TargetQubit::normalized(parse_complex(o.alpha), parse_complex(o.beta));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            auto given = [&](const char* flag, double v) {
                return opt[flag]->count() > 0 ? std::optional<double>(v) : std::nullopt;
            };
            params.p = given("--p", o.p);
            params.q = given("--q", o.q);
            params.gamma = given("--gamma", o.gamma);
            params.delta = given("--delta", o.delta);
            try {
                params.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto report = remcoh::run(params);
            if (o.format == "json") {
                os << remcoh::to_json(report).dump(2) << '\n';
            } else {
                remcoh::write_csv(report, os);
            }
        } else {
            if (command == "fig3" && !(o.p >= 0.0 && o.p <= 1.0)) throw UsageError("--p outside [0, 1]");
            remcoh::FigureDataset ds;
            if (command == "fig1") ds = remcoh::cmd_fig1(o.steps);
            if (command == "fig2") ds = remcoh::cmd_fig2(o.p_steps, o.gamma_steps);
            if (command == "fig3") ds = remcoh::cmd_fig3(o.gamma_steps, o.delta_steps, o.p);
            if (command == "fig4") ds = remcoh::cmd_fig4(o.p_steps, o.q_steps);
            if (o.format == "json") {
                remcoh::write_json(ds, os);
            } else {
                remcoh::write_csv(ds, os);
            }
        }
        payload = os.str();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    if (o.out.empty()) {
        std::cout << payload;
        return std::cout ? 0 : kExitRuntime;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << payload) || !file.flush()) {
        std::cerr << "error: cannot write " << o.out << '\n';
        return kExitRuntime;
    }
    return 0;
}
