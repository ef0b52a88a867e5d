#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "imethod_cli/config.hpp"

namespace imethod::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Where a subcommand writes. The directory is created on demand and receives
/// resolved_config.json, config.sha256 and run_metadata.json besides the reports.
struct RunContext {
    RunConfig config;
    std::filesystem::path out_dir;
    std::ostream* log = nullptr;
};

int cmd_verify_pointwise(const RunContext& ctx);
int cmd_verify_sublevel(const RunContext& ctx);
int cmd_verify_geometry(const RunContext& ctx);
int cmd_simulate(const RunContext& ctx);
int cmd_sweep_energy(const RunContext& ctx);
int cmd_crosscheck_derivative(const RunContext& ctx);
int cmd_plan(const RunContext& ctx);

/// Look up a subcommand by its command-line name; nullptr when unknown.
using Command = int (*)(const RunContext&);
Command find_command(const std::string& name);

/// Run `name` with sidecars: resolved config and hash first, metadata (timestamps,
/// exit code, wall time) last. Library errors become kExitUsage with a message on log.
int run_command(const std::string& name, const RunContext& ctx);

/// Write `j` as indented JSON followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace imethod::cli
