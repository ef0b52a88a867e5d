#pragma once

// Pseudo-spectral integration of u_t + u_xxx = (u^4)_x on a torus.
//
// In Fourier variables c_n' = i k^3 c_n + i k P[(u^4)^]_n, where P truncates to the
// grid. The linear part is integrated exactly (integrating factor e^{i k^3 t}) and
// the quartic is evaluated on a zero-padded grid so no aliasing enters the kept modes.

#include <cstdint>
#include <functional>
#include <vector>

#include "imethod/spectral.hpp"

namespace imethod {

struct SolverConfig {
    double dt = 1e-4;
    double T_end = 1.0;
    /// Padded physical grid holds at least dealias_pad * M points.
    double dealias_pad = 2.5;
    /// Test hook: false evolves the linear Airy flow only.
    bool nonlinear = true;

    void validate() const;
};

/// Number of points on the padded physical grid for M modes.
int padded_size(int M, double dealias_pad);

/// Integrating-factor RK4 stepper bound to one grid. Not thread-safe; use one per run.
class Stepper {
public:
    Stepper(const FrequencyGrid& grid, const SolverConfig& cfg);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    /// Advance by h (h may be negative). Throws BlowUpError, stamped with `t + h`,
    /// when a non-finite coefficient appears.
    SpectralField advance(const SpectralField& u, double h, double t = 0.0);

    /// i k P[(u^4)^] on the kept modes (half spectrum).
    void nonlinear_term(std::span<const cplx> c, std::span<cplx> out);

    const FrequencyGrid& grid() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One step of size cfg.dt.
SpectralField step(const SpectralField& u, const SolverConfig& cfg);

using Observer = std::function<void(double t, const SpectralField& u)>;

struct RunResult {
    SpectralField final_state;
    double t_final = 0.0;
    std::int64_t steps = 0;
    double dt_used = 0.0;  ///< T_end / steps
    double L = 0.0;
    int M = 0;
};

/// Integrate from t = 0 to cfg.T_end. Observers see t = 0, every `stride` steps, and
/// the final state (once). The step is shrunk so an integer number of steps hits T_end.
RunResult run(const SpectralField& u0, const SolverConfig& cfg, int stride,
              const std::vector<Observer>& observers = {});

}  // namespace imethod
