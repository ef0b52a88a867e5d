#include "imethod/solver.hpp"

#include <cmath>
#include <string>

#include "imethod/error.hpp"

namespace imethod {

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("SolverConfig: dt must be > 0");
    if (!(T_end >= 0.0) || !std::isfinite(T_end)) throw DomainError("SolverConfig: T_end must be >= 0");
    if (!(dealias_pad >= 2.5)) throw DomainError("SolverConfig: dealias_pad must be >= 5/2");
}

int padded_size(int M, double dealias_pad) {
    int P = static_cast<int>(std::ceil(dealias_pad * M - 1e-9));
    if (P % 2 != 0) ++P;
    return P;
}

struct Stepper::Impl {
    FrequencyGrid grid;
    SolverConfig cfg;
    int kept;  // number of stored half-spectrum modes
    int P;
    RealFft fft;
    std::vector<cplx> spec;
    std::vector<double> phys;
    std::vector<cplx> a, b, c, d, tmp;

    Impl(const FrequencyGrid& g, const SolverConfig& cf)
        : grid(g),
          cfg(cf),
          kept(g.max_index() + 1),
          P(padded_size(g.modes(), cf.dealias_pad)),
          fft(P),
          spec(static_cast<std::size_t>(P / 2 + 1)),
          phys(static_cast<std::size_t>(P)),
          a(kept), b(kept), c(kept), d(kept), tmp(kept) {}

    void nonlinear(std::span<const cplx> in, std::span<cplx> out) {
        if (!cfg.nonlinear) {
            std::fill(out.begin(), out.end(), cplx{});
            return;
        }
        std::fill(spec.begin(), spec.end(), cplx{});
        std::copy(in.begin(), in.end(), spec.begin());
        spec[0] = {spec[0].real(), 0.0};
        fft.inverse(spec, phys);
        for (double& v : phys) {
            const double v2 = v * v;
            v = v2 * v2;
        }
        fft.forward(phys, spec);
        const double inv = 1.0 / P;
        for (int n = 0; n < kept; ++n) {
            out[n] = cplx(0.0, grid.wavenumber(n)) * (spec[n] * inv);
        }
        out[0] = {};
    }
};

Stepper::Stepper(const FrequencyGrid& grid, const SolverConfig& cfg) {
    if (!(cfg.dealias_pad >= 2.5)) throw DomainError("Stepper: dealias_pad must be >= 5/2");
    impl_ = std::make_unique<Impl>(grid, cfg);
}
Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

const FrequencyGrid& Stepper::grid() const noexcept { return impl_->grid; }

void Stepper::nonlinear_term(std::span<const cplx> c, std::span<cplx> out) { impl_->nonlinear(c, out); }

SpectralField Stepper::advance(const SpectralField& u, double h, double t) {
    Impl& s = *impl_;
    if (!(u.grid() == s.grid)) throw DomainError("Stepper::advance: field lives on a different grid");
    const auto v = u.half();
    const int K = s.kept;
    std::vector<cplx> E(K), E2(K);
    for (int n = 0; n < K; ++n) {
        const double k = s.grid.wavenumber(n);
        const double w = k * k * k;
        E[n] = std::polar(1.0, w * h);
        E2[n] = std::polar(1.0, 0.5 * w * h);
    }
    s.nonlinear(v, s.a);
    for (int n = 0; n < K; ++n) {
        s.a[n] *= h;
        s.tmp[n] = E2[n] * (v[n] + 0.5 * s.a[n]);
    }
    s.nonlinear(s.tmp, s.b);
    for (int n = 0; n < K; ++n) {
        s.b[n] *= h;
        s.tmp[n] = E2[n] * v[n] + 0.5 * s.b[n];
    }
    s.nonlinear(s.tmp, s.c);
    for (int n = 0; n < K; ++n) {
        s.c[n] *= h;
        s.tmp[n] = E[n] * v[n] + E2[n] * s.c[n];
    }
    s.nonlinear(s.tmp, s.d);
    std::vector<cplx> next(K);
    for (int n = 0; n < K; ++n) {
        s.d[n] *= h;
        next[n] = E[n] * v[n] +
                  (E[n] * s.a[n] + 2.0 * E2[n] * (s.b[n] + s.c[n]) + s.d[n]) / 6.0;
    }
    SpectralField out(s.grid, std::move(next));
    if (!out.all_finite()) {
        throw BlowUpError(t + h, "non-finite coefficient at t = " + std::to_string(t + h));
    }
    return out;
}

SpectralField step(const SpectralField& u, const SolverConfig& cfg) {
    cfg.validate();
    Stepper stepper(u.grid(), cfg);
    return stepper.advance(u, cfg.dt);
}

RunResult run(const SpectralField& u0, const SolverConfig& cfg, int stride,
              const std::vector<Observer>& observers) {
    cfg.validate();
    if (stride < 1) throw DomainError("run: stride must be >= 1");
    RunResult result{u0, 0.0, 0, 0.0, u0.grid().length(), u0.grid().modes()};
    auto notify = [&](double t, const SpectralField& u) {
        for (const auto& obs : observers) obs(t, u);
    };
    notify(0.0, u0);
    if (cfg.T_end == 0.0) return result;

    const auto steps = static_cast<std::int64_t>(std::ceil(cfg.T_end / cfg.dt - 1e-9));
    const double h = cfg.T_end / static_cast<double>(steps);
    Stepper stepper(u0.grid(), cfg);
    SpectralField u = u0;
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double t_prev = static_cast<double>(i - 1) * h;
        u = stepper.advance(u, h, t_prev);
        const double t = i == steps ? cfg.T_end : static_cast<double>(i) * h;
        if (i % stride == 0 || i == steps) notify(t, u);
    }
    result.final_state = std::move(u);
    result.t_final = cfg.T_end;
    result.steps = steps;
    result.dt_used = h;
    return result;
}

}  // namespace imethod
