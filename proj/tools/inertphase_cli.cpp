// Batch front end: inertphase <neutron|ring|compare|sweep|validate> --config FILE [--out DIR]

#include <cstddef>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "inertphase/errors.hpp"
#include "inertphase/run.hpp"
#include "inertphase/scenario.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::size_t workers = 0;
    std::uint64_t seed = 0;  // reserved; every computation is deterministic
};

void add_flags(CLI::App* sub, Flags& flags, bool with_run_flags) {
    sub->add_option("--config", flags.config, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    if (!with_run_flags) return;
    sub->add_option("--out", flags.out, "Output directory (overrides output.dir)");
    sub->add_option("--workers", flags.workers, "Parallel sweep workers (overrides workers)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "Reserved; runs are deterministic");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace inertphase;

    CLI::App app{"Neutron phase vs. classical current-loop simulations"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"neutron", "Action and phase shift of a drifting neutron"},
        {"ring", "Charged-fluid ring: back-reaction and Lagrangian constancy"},
        {"compare", "Neutron against the matched classical ring"},
        {"sweep", "Phase shift over a swept pulse parameter"},
    };
    for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags, true);
    add_flags(app.add_subcommand("validate", "Load and validate a scenario, print it normalized"), flags,
              false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Scenario scenario = load_scenario(flags.config);
        if (command == "validate") {
            std::cout << "ok: " << scenario.id << " (" << to_string(scenario.kind) << ")";
            if (!scenario.sub_runs.empty()) std::cout << ", " << scenario.sub_runs.size() << " sub-runs";
            std::cout << "\n" << write_scenario(scenario);
            return 0;
        }
        if (command != to_string(scenario.kind)) {
            throw ConfigError("kind: scenario is of kind '" + std::string(to_string(scenario.kind)) +
                              "' but subcommand '" + command + "' was requested");
        }
        RunOptions options;
        if (!flags.out.empty()) options.out_dir = flags.out;
        if (flags.workers > 0) options.workers = flags.workers;
        const RunSummary summary = run(scenario, options);
        std::cout << format_summary(summary);
        for (const auto& p : summary.outputs) std::cout << "  wrote " << p.string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "validation failed:\n";
        for (const auto& issue : e.issues()) std::cerr << "  - " << issue << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
