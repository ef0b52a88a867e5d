#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace imethod {

using cplx = std::complex<double>;

/// Periodic grid of length L with M modes; represented wavenumbers are
/// dk * n for n in {-M/2+1, ..., M/2}.
class FrequencyGrid {
public:
    FrequencyGrid(double L, int M);

    double length() const noexcept { return L_; }
    int modes() const noexcept { return M_; }
    double dk() const noexcept { return dk_; }
    /// Largest index carried by a SpectralField (the Nyquist index M/2 is held at zero).
    int max_index() const noexcept { return M_ / 2 - 1; }
    double wavenumber(int n) const noexcept { return dk_ * n; }

    /// Parseval constant: ||u||_{L^2}^2 = length() * sum_n |c_n|^2.
    double parseval() const noexcept { return L_; }

    bool operator==(const FrequencyGrid& o) const noexcept { return L_ == o.L_ && M_ == o.M_; }

private:
    double L_;
    int M_;
    double dk_;
};

/// Fourier coefficients of a real field, u(x) = sum_n c_n exp(i dk n x).
///
/// Only c_0 .. c_{M/2-1} are stored; c_{-n} = conj(c_n) is implied, so Hermitian
/// symmetry holds by construction. c_0 is kept real and the Nyquist mode is zero
/// (its conjugate partner is not representable).
/// The forward transform carries the 1/M factor: c_n = (1/M) sum_j u(x_j) e^{-i k_n x_j}.
class SpectralField {
public:
    explicit SpectralField(const FrequencyGrid& grid);
    SpectralField(const FrequencyGrid& grid, std::vector<cplx> half_spectrum);

    const FrequencyGrid& grid() const noexcept { return grid_; }

    /// Coefficient for any index |n| <= max_index(); zero outside.
    cplx coeff(int n) const noexcept;
    /// Set c_n (n >= 0) and, implicitly, c_{-n}. Setting n = 0 keeps the real part only.
    void set(int n, cplx value);

    std::span<const cplx> half() const noexcept { return c_; }
    std::span<cplx> half() noexcept { return c_; }

    /// Restore the invariants (real zero mode) after raw arithmetic on half().
    void symmetrize() noexcept;

    /// sum_n |c_n|^2 over all represented n (both signs).
    double power() const noexcept;
    /// ||u||_{L^2}^2.
    double l2_squared() const noexcept { return grid_.parseval() * power(); }
    double l2_norm() const noexcept;
    /// ||u||_{H^s}^2 = L sum <k_n>^{2s} |c_n|^2.
    double hs_squared(double s) const noexcept;
    double max_abs_coeff() const noexcept;
    bool all_finite() const noexcept;

    SpectralField& operator*=(double a) noexcept;

private:
    FrequencyGrid grid_;
    std::vector<cplx> c_;
};

/// Real-to-complex / complex-to-real transform pair of size n (FFTW plans).
/// Plan creation is serialized internally; execution is reentrant per object.
class RealFft {
public:
    explicit RealFft(int n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    RealFft(RealFft&&) noexcept;
    RealFft& operator=(RealFft&&) noexcept;

    int size() const noexcept;
    /// Unnormalized forward transform of `x` (length n) into `out` (length n/2+1).
    void forward(std::span<const double> x, std::span<cplx> out);
    /// Unnormalized inverse transform of `in` (length n/2+1) into `x` (length n).
    void inverse(std::span<const cplx> in, std::span<double> x);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Physical values of `u` on the M-point grid x_j = j L / M.
std::vector<double> to_physical(const SpectralField& u);
/// Coefficients of grid values (length M); the Nyquist coefficient is dropped.
SpectralField from_physical(const FrequencyGrid& grid, std::span<const double> values);

/// Stretch u(x) -> lambda^{-2/3} u(x / lambda) onto the grid of length lambda L with
/// the same number of modes. In continuous normalization this is
/// hat(u^lambda)(xi) = lambda^{1/3} hat(u)(lambda xi); with the 1/M forward
/// convention the coefficients simply scale by lambda^{-2/3}.
SpectralField rescale(const SpectralField& u, double lambda);

/// Same map onto an explicit target grid. Every nonzero source mode must land on a
/// representable target index; otherwise DomainError.
SpectralField rescale_onto(const SpectralField& u, double lambda, const FrequencyGrid& target);

}  // namespace imethod
