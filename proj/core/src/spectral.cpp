#include "imethod/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "imethod/error.hpp"
#include "imethod/numeric.hpp"

namespace imethod {

FrequencyGrid::FrequencyGrid(double L, int M) : L_(L), M_(M), dk_(2.0 * std::numbers::pi / L) {
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("FrequencyGrid: L must be positive");
    if (M < 2 || M % 2 != 0) {
        throw DomainError("FrequencyGrid: M must be an even integer >= 2, got " + std::to_string(M));
    }
}

SpectralField::SpectralField(const FrequencyGrid& grid)
    : grid_(grid), c_(static_cast<std::size_t>(grid.max_index() + 1)) {}

SpectralField::SpectralField(const FrequencyGrid& grid, std::vector<cplx> half_spectrum)
    : grid_(grid), c_(std::move(half_spectrum)) {
    if (c_.size() != static_cast<std::size_t>(grid.max_index() + 1)) {
        throw DomainError("SpectralField: half spectrum must hold M/2 coefficients");
    }
    symmetrize();
}

cplx SpectralField::coeff(int n) const noexcept {
    const int a = n < 0 ? -n : n;
    if (a > grid_.max_index()) return {};
    return n < 0 ? std::conj(c_[a]) : c_[a];
}

void SpectralField::set(int n, cplx value) {
    if (n < 0) {
        n = -n;
        value = std::conj(value);
    }
    if (n > grid_.max_index()) throw DomainError("SpectralField::set: index out of range");
    c_[n] = n == 0 ? cplx(value.real(), 0.0) : value;
}

void SpectralField::symmetrize() noexcept {
    if (!c_.empty()) c_[0] = {c_[0].real(), 0.0};
}

double SpectralField::power() const noexcept {
    if (c_.empty()) return 0.0;
    CompensatedSum acc;
    acc.add(std::norm(c_[0]));
    for (std::size_t n = 1; n < c_.size(); ++n) acc.add(2.0 * std::norm(c_[n]));
    return acc.value();
}

double SpectralField::l2_norm() const noexcept { return std::sqrt(l2_squared()); }

double SpectralField::hs_squared(double s) const noexcept {
    CompensatedSum acc;
    for (std::size_t n = 0; n < c_.size(); ++n) {
        const double k = grid_.wavenumber(static_cast<int>(n));
        const double w = std::pow(japanese(k), 2.0 * s) * std::norm(c_[n]);
        acc.add(n == 0 ? w : 2.0 * w);
    }
    return grid_.parseval() * acc.value();
}

double SpectralField::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

bool SpectralField::all_finite() const noexcept {
    return std::all_of(c_.begin(), c_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

SpectralField& SpectralField::operator*=(double a) noexcept {
    for (auto& z : c_) z *= a;
    return *this;
}

// ---------------------------------------------------------------------------

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct RealFft::Impl {
    int n;
    double* real;
    fftw_complex* spec;
    fftw_plan fwd;
    fftw_plan inv;

    explicit Impl(int n_) : n(n_) {
        std::lock_guard lock(planner_mutex());
        real = fftw_alloc_real(static_cast<std::size_t>(n));
        spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Impl() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(inv);
        fftw_destroy_plan(fwd);
        fftw_free(spec);
        fftw_free(real);
    }
};

RealFft::RealFft(int n) {
    if (n < 2 || n % 2 != 0) throw DomainError("RealFft: size must be even and >= 2");
    impl_ = std::make_unique<Impl>(n);
}
RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

int RealFft::size() const noexcept { return impl_->n; }

void RealFft::forward(std::span<const double> x, std::span<cplx> out) {
    const int n = impl_->n;
    std::copy_n(x.begin(), n, impl_->real);
    fftw_execute(impl_->fwd);
    for (int i = 0; i <= n / 2; ++i) out[i] = {impl_->spec[i][0], impl_->spec[i][1]};
}

void RealFft::inverse(std::span<const cplx> in, std::span<double> x) {
    const int n = impl_->n;
    for (int i = 0; i <= n / 2; ++i) {
        impl_->spec[i][0] = in[i].real();
        impl_->spec[i][1] = in[i].imag();
    }
    fftw_execute(impl_->inv);
    std::copy_n(impl_->real, n, x.begin());
}

// ---------------------------------------------------------------------------

std::vector<double> to_physical(const SpectralField& u) {
    const int M = u.grid().modes();
    RealFft fft(M);
    std::vector<cplx> spec(static_cast<std::size_t>(M / 2 + 1));
    std::copy(u.half().begin(), u.half().end(), spec.begin());
    std::vector<double> x(static_cast<std::size_t>(M));
    fft.inverse(spec, x);
    return x;
}

SpectralField from_physical(const FrequencyGrid& grid, std::span<const double> values) {
    const int M = grid.modes();
    if (values.size() != static_cast<std::size_t>(M)) {
        throw DomainError("from_physical: expected M grid values");
    }
    RealFft fft(M);
    std::vector<cplx> spec(static_cast<std::size_t>(M / 2 + 1));
    fft.forward(values, spec);
    std::vector<cplx> half(spec.begin(), spec.begin() + grid.max_index() + 1);
    for (auto& z : half) z /= static_cast<double>(M);
    return SpectralField(grid, std::move(half));
}

SpectralField rescale(const SpectralField& u, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("rescale: lambda must be > 0");
    const FrequencyGrid target(lambda * u.grid().length(), u.grid().modes());
    std::vector<cplx> half(u.half().begin(), u.half().end());
    const double a = std::pow(lambda, -2.0 / 3.0);
    for (auto& z : half) z *= a;
    return SpectralField(target, std::move(half));
}

SpectralField rescale_onto(const SpectralField& u, double lambda, const FrequencyGrid& target) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("rescale: lambda must be > 0");
    // Source mode n has wavenumber dk n / lambda after stretching; it lands on
    // target index n * ratio.
    const double ratio = target.length() / (lambda * u.grid().length());
    const double a = std::pow(lambda, -2.0 / 3.0);
    SpectralField out(target);
    for (int n = 0; n <= u.grid().max_index(); ++n) {
        const cplx c = u.coeff(n);
        if (c == cplx{}) continue;
        const double idx = n * ratio;
        const double rounded = std::round(idx);
        if (std::abs(idx - rounded) > 1e-9 * std::max(1.0, std::abs(idx))) {
            throw DomainError("rescale_onto: mode " + std::to_string(n) +
                              " does not land on the target grid");
        }
        if (rounded > target.max_index()) {
            throw DomainError("rescale_onto: mode " + std::to_string(n) +
                              " lands beyond the target grid");
        }
        out.set(static_cast<int>(rounded), a * c);
    }
    return out;
}

}  // namespace imethod
