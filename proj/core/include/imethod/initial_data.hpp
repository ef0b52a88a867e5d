#pragma once

#include <cstdint>
#include <string>

#include "imethod/spectral.hpp"

namespace imethod {

enum class InitialDataKind { random_phase, gaussian_bumps };

InitialDataKind parse_initial_data_kind(const std::string& name);
std::string to_string(InitialDataKind kind);

struct InitialDataSpec {
    InitialDataKind kind = InitialDataKind::random_phase;
    double Hs_target = 0.1;  ///< requested ||u0||_{H^s}
    double s = 0.0;          ///< Sobolev index of the normalization
    std::uint64_t seed = 1;

    // random_phase: |c_n| proportional to <k_n>^{-spectral_slope} on band_min <= n <= band_max
    double spectral_slope = 1.0;
    int band_min = 1;
    int band_max = 16;

    // gaussian_bumps: `bumps` bumps of width in [width_min, width_max] (length units)
    int bumps = 3;
    double width_min = 0.3;
    double width_max = 1.0;
};

/// Real initial field normalized so that ||u0||_{H^s} = Hs_target.
/// Random-phase data have zero mean. Throws DomainError when the grid cannot carry
/// any of the requested modes.
SpectralField make_initial_data(const InitialDataSpec& spec, const FrequencyGrid& grid);

}  // namespace imethod
