#pragma once

// Frequency-restricted integrals over Gamma_5:
//
//   I = int_box w(xi) 1_{|Phi - alpha| < K} d xi_A'          (sublevel)
//   I = int_box w(xi) 1_{|Phi - alpha| > K} / |Phi - alpha|    (quotient tail)
//
// where A' is the free index set without its last element, which is the dependent
// frequency xi_dep = -(sum of the others). The last integrated variable is the line
// variable: along it Phi is a polynomial of degree <= 2, so the restricted set is a
// union of intervals found in closed form and the line integral is done by
// quadrature. The remaining integrated variables are sampled by Monte Carlo.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "imethod/numeric.hpp"

namespace imethod {

enum class WeightKind {
    constant,         ///< 1
    basic_smoothing,  ///< max_{j<=4} |xi_j| <xi_j>^{1/2-eps}
    refined,          ///< |xi_5| <xi_5>^{1-2eps} / <xi_4>^{1/2-eps}
    d3,               ///< |xi_5|^{1-4s} |xi_4| / N^{-4s}
};

enum class PhaseKind {
    phi5,    ///< sum xi_j^3
    linear,  ///< xi_{linear_index}
};

enum class Restriction { sublevel, quotient_tail };

WeightKind parse_weight_kind(const std::string& name);
std::string to_string(WeightKind w);
Restriction parse_restriction(const std::string& name);
std::string to_string(Restriction r);

struct SublevelQuery {
    WeightKind weight = WeightKind::constant;
    PhaseKind phase = PhaseKind::phi5;
    int linear_index = 0;
    Restriction restriction = Restriction::sublevel;
    /// Indices in 0..4; the last one is the dependent frequency. At least two entries.
    std::vector<int> free_indices{0, 1, 4};
    /// Values at indices outside free_indices (entries at free indices are ignored).
    std::array<double, 5> fixed{};
    double alpha = 0.0;
    double K = 1.0;
    double box_lo = -64.0;
    double box_hi = 64.0;
    double s = -1.0 / 48.0;
    double N = 16.0;
    double eps = 0.05;

    void validate() const;
    /// Number of integrated variables (free_indices.size() - 1).
    int dimension() const { return static_cast<int>(free_indices.size()) - 1; }
};

/// Box [-4N, 4N].
void set_default_box(SublevelQuery& q);

double weight_value(const SublevelQuery& q, const std::array<double, 5>& xi);
double phase_value(const SublevelQuery& q, const std::array<double, 5>& xi);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

/// Conditional Monte Carlo estimate (exact line integral per sample). With a single
/// integrated variable the result is deterministic and std_error is 0. samples >= 1000.
Estimate sublevel_integral(const SublevelQuery& q, std::int64_t samples, std::uint64_t seed);

/// Plain hit-or-miss estimate over all integrated variables; independent check.
Estimate sublevel_integral_hit_or_miss(const SublevelQuery& q, std::int64_t samples,
                                       std::uint64_t seed);

struct SupConfig {
    std::array<double, 5> fixed{};
    double alpha = 0.0;
};

struct ScalingReport {
    std::string weight;
    std::vector<double> levels;
    std::vector<double> estimates;
    std::vector<double> std_errors;
    LogLogFit fit;
    std::vector<SupConfig> argmax_config;  ///< one per level
    std::uint64_t seed = 0;
};

/// Approximate sup over fixed frequencies and alpha: draw `configs` configurations
/// (fixed values uniform in the box; alpha = Phi at a uniform box point, or 0 for the
/// quotient tail), estimate every level with common random numbers per configuration,
/// keep the max per level and fit the log-log slope. Requires >= 8 levels.
ScalingReport sweep_sup(const SublevelQuery& tmpl, int configs, std::span<const double> levels,
                        std::int64_t samples, std::uint64_t seed);

nlohmann::json to_json(const ScalingReport& r);

}  // namespace imethod
