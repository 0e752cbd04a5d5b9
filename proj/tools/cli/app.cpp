#include "cli/app.hpp"

#include "cli/commands.hpp"

#include <qcovert/errors.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace qcovert::cli {

namespace {

struct RawOptions {
    std::optional<double> q;
    std::optional<std::string> q_grid;
    std::optional<std::string> n_grid;
    std::optional<std::string> alpha_grid;
    std::optional<std::string> scenario;
    std::string format;
};

void add_common_options(CLI::App& sub, RunConfig& cfg, RawOptions& raw) {
    auto* q = sub.add_option("--q", raw.q, "Noise parameter");
    sub.add_option("--q-grid", raw.q_grid, "Noise grid, a:b:step or a comma list")->excludes(q);
    sub.add_option("--nu", cfg.nu, "Schedule exponent in (0, 1/6)");
    sub.add_option("--eps", cfg.eps, "Decoding error in (0, 1)");
    sub.add_option("--n-grid", raw.n_grid, "Blocklengths, a:b:step or a comma list");
    sub.add_option("--scenario", raw.scenario, "Warden scenario: 1 (AllEnv), 2 (E2Only), 3 (E1Only)");
    sub.add_option("--alpha-grid", raw.alpha_grid, "Input weights, a:b:step or a comma list");
    sub.add_option("--out", cfg.out, "Output path, '-' for stdout");
    sub.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig finish_config(RunConfig cfg, const RawOptions& raw) {
    if (raw.q) cfg.q_grid = {*raw.q};
    if (raw.q_grid) cfg.q_grid = parse_real_grid(*raw.q_grid);
    if (raw.n_grid) cfg.n_grid = parse_integer_grid(*raw.n_grid);
    if (raw.alpha_grid) cfg.alpha_grid = parse_real_grid(*raw.alpha_grid);
    if (raw.scenario) cfg.scenario = parse_scenario(*raw.scenario);
    if (raw.format.empty()) {
        cfg.format = cfg.command == Command::Scenario ? Format::Json : Format::Csv;
    } else {
        cfg.format = raw.format == "json" ? Format::Json : Format::Csv;
    }
    return with_defaults(std::move(cfg));
}

}  // namespace

int exit_code_for(std::exception_ptr error) {
    try {
        std::rethrow_exception(error);
    } catch (const ValidationError&) {
        return kExitUsage;
    } catch (const DimensionError&) {
        return kExitUsage;
    } catch (...) {
        return kExitNumerical;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Entanglement-assisted covert communication analysis over the qubit depolarizing channel"};
    app.require_subcommand(1);

    const std::map<std::string, Command> commands{
        {"bound-curve", Command::BoundCurve},
        {"approx-check", Command::ApproxCheck},
        {"rate-table", Command::RateTable},
        {"scenario", Command::Scenario},
        {"detect-sim", Command::DetectSim},
    };
    const std::map<std::string, std::string> descriptions{
        {"bound-curve", "Capacity lower bound as a function of q"},
        {"approx-check", "Exact D, V, Q against their leading small-alpha terms"},
        {"rate-table", "Finite-blocklength code sizes and covert rates"},
        {"scenario", "Support and distinguishability report per warden scenario"},
        {"detect-sim", "Exact n-copy Helstrom error of the warden"},
    };

    RunConfig cfg;
    RawOptions raw;
    for (const auto& [name, cmd] : commands) {
        auto* sub = app.add_subcommand(name, descriptions.at(name));
        add_common_options(*sub, cfg, raw);
        sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        const auto final_cfg = finish_config(cfg, raw);
        write_output(render(run_command(final_cfg), final_cfg), final_cfg);
    } catch (const std::exception& e) {
        const int rc = exit_code_for(std::current_exception());
        std::cerr << (rc == kExitUsage ? "error: " : "numerical failure: ") << e.what() << "\n";
        return rc;
    }
    return kExitOk;
}

}  // namespace qcovert::cli
