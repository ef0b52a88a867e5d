#pragma once

// Modified energies along a trajectory.
//
// Conventions (1/M forward transform, Parseval constant L):
//   E1      = L sum_n m(k_n)^2 |c_n|^2
//   Lambda5 = L sum_{n1+..+n5=0} M(k_1..k_5) c_{n1} ... c_{n5}
//   dE1/dt  = -(2i/5) Lambda5(M1)            (exact for the truncated flow)
//   corr5   = Lambda5(2 M1 / (5 Phi5) 1_{|Phi5|>K}) = -Lambda5(M5')
//   E2      = E1 + corr5

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "imethod/multiplier.hpp"
#include "imethod/spectral.hpp"
#include "imethod/trajectory_io.hpp"

namespace imethod {

struct TrackerConfig {
    /// Cutoff level; a non-positive value means "auto", i.e. N^{-1/2}.
    double K = 0.0;
    /// Largest |k| that enters the quintic sum.
    double mode_cutoff = std::numeric_limits<double>::infinity();
    /// Modes with |c| < amp_threshold * max|c| are dropped from the quintic sum.
    double amp_threshold = 1e-12;
    /// Observer cadence in solver steps.
    int stride = 10;
    /// Refuse quintic sums with more than this many quadruples.
    double budget = 2e9;
    /// Relative tolerance on the imaginary residue of corr5.
    double tol_reality = 1e-8;

    void validate() const;
    double resolved_K(const MultiplierParams& p) const;
};

double energy_E1(const SpectralField& u, const MultiplierParams& p);

/// Which symbol the quintic hyperplane sum carries.
enum class QuinticSymbol {
    m1,          ///< M1 = sum m_j^2 xi_j, no cutoff
    correction,  ///< 2 M1 / (5 Phi5) on |Phi5| > K
};

struct QuinticSum {
    cplx value;                    ///< Lambda5 including the factor L
    std::int64_t quadruples = 0;   ///< (n1, n2, n3, n4) visited with n5 on the grid
    int active_modes = 0;
};

/// Lambda5 over active modes. Phi5 is formed exactly as an integer multiple of dk^3
/// before the cutoff test. Parallel over n1 with chunk-ordered reduction.
QuinticSum lambda5(const SpectralField& u, const MultiplierParams& p, QuinticSymbol symbol,
                   const TrackerConfig& cfg);

/// Real part of Lambda5(2 M1/(5 Phi5) 1_{|Phi5|>K}). Throws Error when the imaginary
/// residue exceeds cfg.tol_reality * (|corr5| + E1).
double quintic_correction(const SpectralField& u, const MultiplierParams& p,
                          const TrackerConfig& cfg);

/// -(2i/5) Lambda5(M1; u), the instantaneous dE1/dt.
double dE1_from_lambda5(const SpectralField& u, const MultiplierParams& p,
                        const TrackerConfig& cfg);

struct EnergyRecord {
    double t = 0.0;
    double E1 = 0.0;
    double corr5 = 0.0;
    double E2 = 0.0;
    std::optional<double> dE1_fd;
    std::optional<double> dE1_lambda5;
};

EnergyRecord energy_record(double t, const SpectralField& u, const MultiplierParams& p,
                           const TrackerConfig& cfg);

void write_energy_csv_header(std::ostream& os);
void write_energy_csv_row(std::ostream& os, const EnergyRecord& r);

struct CrosscheckResult {
    std::vector<EnergyRecord> records;  ///< dE1_fd and dE1_lambda5 filled at interior times
    /// max_t |dE1_fd - dE1_lambda5| / max_t |dE1_lambda5|; 0 when both sides vanish.
    double max_relative_mismatch = 0.0;
    double max_abs_mismatch = 0.0;
    double scale = 0.0;  ///< max_t |dE1_lambda5|
};

/// Compare central differences of E1 along an equally spaced trajectory with the
/// Lambda5 evaluation of dE1/dt. With five or more samples the fourth-order stencil is
/// used at every time where it fits; shorter trajectories use the second-order one.
CrosscheckResult derivative_crosscheck(const Trajectory& traj, const MultiplierParams& p,
                                       const TrackerConfig& cfg);

}  // namespace imethod
