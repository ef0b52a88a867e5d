#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "imethod/energy.hpp"
#include "imethod/numeric.hpp"
#include "imethod/solver.hpp"

namespace imethod {

struct SweepInput {
    std::vector<double> N_list;
    double s = -1.0 / 48.0;
    TrackerConfig tracker;  ///< K <= 0 gives K = N^{-1/2} per N
    SolverConfig solver;
    std::uint64_t seed = 0;     ///< recorded only; the data are supplied by the caller
    std::string config_hash;    ///< recorded only
};

struct SweepReport {
    std::vector<double> N;
    std::vector<double> K;
    std::vector<double> supdE1;
    std::vector<double> supdE2;
    LogLogFit fit_E1;
    LogLogFit fit_E2;
    /// Energy series per N (same time stamps for every N).
    std::vector<std::vector<EnergyRecord>> series;
    bool partial = false;  ///< the run blew up; increments cover [0, t_reached]
    double t_reached = 0.0;
    double L = 0.0;
    int M = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
};

/// One solver run from u0 (the flow does not depend on N), then E1 and E2 along the
/// snapshots for every N. Slopes are fitted when at least three N values are given
/// and every increment is positive; otherwise (and always for s = 0) the fits are flagged
/// degenerate.
SweepReport almost_conservation_sweep(const SpectralField& u0, const SweepInput& in);

nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const LogLogFit& f);

}  // namespace imethod
