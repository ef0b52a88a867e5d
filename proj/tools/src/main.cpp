#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "imethod_cli/commands.hpp"
#include "imethod_cli/config.hpp"

using namespace imethod::cli;

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for modified-energy estimates of the quartic KdV equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> epsilon;
    app.add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
    app.add_option("--seed", seed, "override global.seed");
    app.add_option("--out", out, "override global.output_dir");
    app.add_option("--epsilon", epsilon, "override global.epsilon");

    const char* names[] = {"verify-pointwise", "verify-sublevel", "verify-geometry", "simulate",
                           "sweep-energy",     "crosscheck-derivative", "plan"};
    const char* help[] = {"Monte Carlo sup of the pointwise symbol ratio",
                          "sublevel and quotient K-scaling slopes",
                          "Jacobian finite-difference check and Morse stationary points",
                          "run the solver and write the trajectory and energies",
                          "almost-conservation sweep over N_list",
                          "finite-difference dE1/dt against the quintic sum",
                          "global well-posedness planning table"};
    for (std::size_t i = 0; i < std::size(names); ++i) app.add_subcommand(names[i], help[i]);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    RunContext ctx;
    ctx.log = &std::cerr;
    try {
        nlohmann::json j = {{"schema_version", kSchemaVersion}};
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError({config_path + ": cannot open"});
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError({config_path + ": " + e.what()});
            }
        }
        if (!j.is_object()) throw ConfigError({"(root): expected an object"});
        if (seed) j["global"]["seed"] = *seed;
        if (out) j["global"]["output_dir"] = *out;
        if (epsilon) j["global"]["epsilon"] = *epsilon;
        ctx.config = parse_config(j);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }
    ctx.out_dir = ctx.config.global.output_dir;
    return run_command(command, ctx);
}
