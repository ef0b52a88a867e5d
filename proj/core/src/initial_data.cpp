#include "imethod/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "imethod/error.hpp"
#include "imethod/numeric.hpp"

namespace imethod {

InitialDataKind parse_initial_data_kind(const std::string& name) {
    if (name == "random-phase") return InitialDataKind::random_phase;
    if (name == "gaussian-bumps") return InitialDataKind::gaussian_bumps;
    throw DomainError("unknown initial data kind '" + name + "' (random-phase | gaussian-bumps)");
}

std::string to_string(InitialDataKind kind) {
    return kind == InitialDataKind::random_phase ? "random-phase" : "gaussian-bumps";
}

namespace {

SpectralField random_phase(const InitialDataSpec& spec, const FrequencyGrid& grid) {
    SpectralField u(grid);
    const int lo = std::max(1, spec.band_min);
    const int hi = std::min(grid.max_index(), spec.band_max);
    auto rng = chunk_engine(spec.seed, 0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int n = lo; n <= hi; ++n) {
        const double amp = std::pow(japanese(grid.wavenumber(n)), -spec.spectral_slope);
        u.set(n, std::polar(amp, phase(rng)));
    }
    return u;
}

SpectralField gaussian_bumps(const InitialDataSpec& spec, const FrequencyGrid& grid) {
    if (spec.bumps < 1) throw DomainError("make_initial_data: need at least one bump");
    const int M = grid.modes();
    const double L = grid.length();
    auto rng = chunk_engine(spec.seed, 0);
    std::uniform_real_distribution<double> centre(0.0, L);
    std::uniform_real_distribution<double> width(spec.width_min, spec.width_max);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(M), 0.0);
    for (int b = 0; b < spec.bumps; ++b) {
        const double x0 = centre(rng);
        const double w = width(rng);
        const double a = sign(rng);
        for (int j = 0; j < M; ++j) {
            double dx = std::fmod(j * L / M - x0, L);
            if (dx > 0.5 * L) dx -= L;
            if (dx < -0.5 * L) dx += L;
            values[j] += a * std::exp(-0.5 * dx * dx / (w * w));
        }
    }
    return from_physical(grid, values);
}

}  // namespace

SpectralField make_initial_data(const InitialDataSpec& spec, const FrequencyGrid& grid) {
    if (!(spec.Hs_target > 0.0)) throw DomainError("make_initial_data: Hs_target must be > 0");
    SpectralField u = spec.kind == InitialDataKind::random_phase ? random_phase(spec, grid)
                                                                  : gaussian_bumps(spec, grid);
    const double norm2 = u.hs_squared(spec.s);
    if (!(norm2 > 0.0)) {
        throw DomainError("make_initial_data: the grid carries no mode of the requested data");
    }
    u *= spec.Hs_target / std::sqrt(norm2);
    return u;
}

}  // namespace imethod
