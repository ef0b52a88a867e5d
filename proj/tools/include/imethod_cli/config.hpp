#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "imethod/energy.hpp"
#include "imethod/initial_data.hpp"
#include "imethod/planner.hpp"
#include "imethod/solver.hpp"
#include "imethod/sublevel.hpp"

namespace imethod::cli {

inline constexpr int kSchemaVersion = 1;

/// Every validation failure found in a config, one "path: message" entry each.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct GlobalSection {
    std::uint64_t seed = 1;
    double epsilon = kDefaultSlack;
    std::string output_dir = "out";
    bool extended_check = true;  ///< cross-check M1 against the long double path
};

struct SolverSection {
    double L = 6.283185307179586;
    int M = 128;
    double dt = 1e-5;
    double T_end = 1.0;
    double dealias_pad = 2.5;
};

struct MultiplierSection {
    double s = -1.0 / 48.0;
    double N = 8.0;
    std::vector<double> N_list{4, 8, 16, 32};
    std::optional<double> K;  ///< empty means N^{-1/2}
};

struct TrackerSection {
    int stride = 5000;
    std::optional<double> mode_cutoff;
    double amp_threshold = 1e-12;
    double budget = 2e9;
};

struct PointwiseSection {
    std::vector<double> N_list{16, 32, 64, 128, 256, 512, 1024};
    std::int64_t samples = 1000000;
    std::optional<double> baseline_sup;
};

struct SublevelCase {
    std::string name;
    WeightKind weight = WeightKind::basic_smoothing;
    PhaseKind phase = PhaseKind::phi5;
    int linear_index = 0;
    Restriction restriction = Restriction::sublevel;
    std::vector<int> free_indices{0, 1, 4};
    std::optional<std::pair<double, double>> box;  ///< empty means [-4N, 4N]
    double slope_min = 0.9;
    double slope_max = 1.1;
};

struct SublevelSection {
    double N = 16.0;
    int configs = 64;
    std::int64_t samples = 2000;
    int level_lo = -7;  ///< levels 2^level_lo .. 2^level_hi
    int level_hi = 0;
    std::vector<SublevelCase> cases;
};

struct GeometrySection {
    std::int64_t jacobian_samples = 10000;
    double fd_tolerance = 1e-6;
    double N = 16.0;
    std::int64_t lower_bound_samples = 10000;
    double morse_p3 = 0.5;
};

struct PlanSection {
    double s = -1.0 / 48.0;
    double T = 100.0;
    double u0_norm = 1.0;
    double eps0 = 0.05;
    std::optional<double> eta;
};

struct RunConfig {
    int schema_version = kSchemaVersion;
    GlobalSection global;
    SolverSection solver;
    InitialDataSpec initial_data;
    MultiplierSection multiplier;
    TrackerSection tracker;
    PointwiseSection pointwise;
    SublevelSection sublevel;
    GeometrySection geometry;
    PlanSection plan;

    SolverConfig solver_config() const;
    TrackerConfig tracker_config() const;
    FrequencyGrid grid() const;
};

/// Default sublevel cases: the linear toy, the basic smoothing weight and the D3
/// quotient tail.
std::vector<SublevelCase> default_sublevel_cases();

RunConfig default_config();

/// Strict parse: unknown keys and wrong types are errors naming their path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Fully resolved config, every key present.
nlohmann::json to_json(const RunConfig& c);

/// Hex SHA-256 of the canonical dump of to_json(c).
std::string config_hash(const RunConfig& c);
std::string sha256_hex(const std::string& data);

}  // namespace imethod::cli
