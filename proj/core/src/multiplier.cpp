#include "imethod/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "imethod/error.hpp"
#include "imethod/numeric.hpp"

namespace imethod {

MultiplierParams::MultiplierParams(double s, double N) : s_(s), N_(N) {
    if (!(s > -1.0 / 6.0) || !(s <= 0.0)) {
        throw DomainError("MultiplierParams: s must lie in (-1/6, 0], got " + std::to_string(s));
    }
    if (!(N >= 1.0) || !std::isfinite(N)) {
        throw DomainError("MultiplierParams: N must be >= 1, got " + std::to_string(N));
    }
}

FrequencyTuple::FrequencyTuple(std::initializer_list<double> xs)
    : FrequencyTuple(std::span<const double>(xs.begin(), xs.size())) {}

FrequencyTuple::FrequencyTuple(std::span<const double> xs) : size_(xs.size()) {
    if (xs.size() < 2 || xs.size() > kMaxSize) {
        throw DomainError("FrequencyTuple: length must be in [2, 8], got " +
                          std::to_string(xs.size()));
    }
    std::copy(xs.begin(), xs.end(), xs_.begin());
}

double FrequencyTuple::sum() const {
    double acc = 0.0;
    for (double x : values()) acc += x;
    return acc;
}

double FrequencyTuple::max_abs() const {
    double acc = 0.0;
    for (double x : values()) acc = std::max(acc, std::abs(x));
    return acc;
}

double FrequencyTuple::gamma_tolerance() const { return 1e-9 * std::max(1.0, max_abs()); }

bool FrequencyTuple::on_gamma() const { return std::abs(sum()) <= gamma_tolerance(); }

void FrequencyTuple::require_on_gamma(const char* who) const {
    if (!on_gamma()) {
        throw DomainError(std::string(who) + ": tuple is off the zero-sum hyperplane (sum = " +
                          std::to_string(sum()) + ")");
    }
}

FrequencyTuple FrequencyTuple::negated() const {
    FrequencyTuple out = *this;
    for (std::size_t i = 0; i < size_; ++i) out.xs_[i] = -xs_[i];
    return out;
}

double m_eval(const MultiplierParams& p, double xi) {
    const double a = std::abs(xi);
    if (a < p.N()) return 1.0;
    return std::pow(a / p.N(), p.s());
}

double phi_n(const FrequencyTuple& t) {
    double acc = 0.0;
    for (double x : t.values()) acc += x * x * x;
    return acc;
}

namespace {

void require_quintic(const FrequencyTuple& t, const char* who) {
    if (t.size() != 5) {
        throw DomainError(std::string(who) + ": expected 5 frequencies, got " +
                          std::to_string(t.size()));
    }
    t.require_on_gamma(who);
}

}  // namespace

double m1_symbol(const MultiplierParams& p, const FrequencyTuple& t) {
    require_quintic(t, "m1_symbol");
    // On Gamma sum xi_j = 0, so M1 = sum (m_j^2 - 1) xi_j and only frequencies
    // at or above N contribute. This form avoids cancellation between the
    // undamped terms.
    CompensatedSum acc;
    for (double x : t.values()) {
        if (std::abs(x) >= p.N()) {
            const double m = m_eval(p, x);
            acc.add((m * m - 1.0) * x);
        }
    }
    return acc.value();
}

long double m1_symbol_extended(const MultiplierParams& p, const FrequencyTuple& t) {
    require_quintic(t, "m1_symbol_extended");
    long double acc = 0.0L;
    for (double x : t.values()) {
        const long double a = std::fabs(static_cast<long double>(x));
        const long double m =
            a < p.N() ? 1.0L : std::pow(a / static_cast<long double>(p.N()),
                                        static_cast<long double>(p.s()));
        acc += m * m * static_cast<long double>(x);
    }
    return acc;
}

SymbolValue m5_prime(const MultiplierParams& p, const FrequencyTuple& t, double K) {
    if (!(K >= 0.0)) throw DomainError("m5_prime: level K must be >= 0");
    const double M1 = m1_symbol(p, t);
    const double Phi = phi_n(t);
    if (std::abs(Phi) > K) return {-2.0 * M1 / (5.0 * Phi), false};
    return {0.0, M1 != 0.0};
}

double pointwise_ratio(const MultiplierParams& p, const FrequencyTuple& t, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("pointwise_ratio: eps must lie in (0, 1/2)");
    const double M1 = m1_symbol(p, t);
    double prod_m = 1.0;
    double bound = 0.0;
    for (double x : t.values()) {
        prod_m *= m_eval(p, x);
        bound = std::max(bound, std::abs(x) * std::pow(japanese(x), 0.5 - eps));
    }
    if (bound == 0.0) return 0.0;
    bound /= std::pow(p.N(), 0.5 - eps);
    return std::abs(M1 / prod_m) / bound;
}

PointwiseSup pointwise_sup(const MultiplierParams& p, std::int64_t samples, double eps,
                           std::uint64_t seed) {
    if (samples < 1) throw DomainError("pointwise_sup: need at least one sample");
    constexpr std::int64_t kChunk = 1 << 14;
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<PointwiseSup> part(static_cast<std::size_t>(chunks));
    const double lo = std::log(p.N() / 100.0);
    const double hi = std::log(100.0 * p.N());
    const double bin_width = (kPointwiseHistHi - kPointwiseHistLo) / kPointwiseHistBins;

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ch = 0; ch < chunks; ++ch) {
        auto rng = chunk_engine(seed, static_cast<std::uint64_t>(ch));
        std::uniform_real_distribution<double> logmag(lo, hi);
        std::bernoulli_distribution coin(0.5);
        PointwiseSup& r = part[static_cast<std::size_t>(ch)];
        r.histogram.assign(kPointwiseHistBins, 0);
        const std::int64_t n = std::min(kChunk, samples - ch * kChunk);
        for (std::int64_t i = 0; i < n; ++i) {
            std::array<double, 5> x{};
            for (int j = 0; j < 4; ++j) {
                const double v = std::exp(logmag(rng));
                x[j] = coin(rng) ? v : -v;
                x[4] -= x[j];
            }
            const FrequencyTuple t(x);
            const double ratio = pointwise_ratio(p, t, eps);
            ++r.samples;
            if (ratio > 0.0) {
                ++r.nonzero;
                const double m1 = m1_symbol(p, t);
                const long double ext = m1_symbol_extended(p, t);
                const double rel = static_cast<double>(std::fabs(m1 - ext) /
                                                       std::max(std::fabs(ext), 1e-300L));
                r.max_extended_rel_diff = std::max(r.max_extended_rel_diff, rel);
                const int b = static_cast<int>(std::floor((std::log10(ratio) - kPointwiseHistLo) / bin_width));
                if (b >= 0 && b < kPointwiseHistBins) ++r.histogram[static_cast<std::size_t>(b)];
            }
            if (ratio > r.sup) {
                r.sup = ratio;
                r.argmax = x;
            }
        }
    }

    PointwiseSup out;
    out.histogram.assign(kPointwiseHistBins, 0);
    for (const PointwiseSup& r : part) {
        if (r.sup > out.sup) {
            out.sup = r.sup;
            out.argmax = r.argmax;
        }
        out.samples += r.samples;
        out.nonzero += r.nonzero;
        out.max_extended_rel_diff = std::max(out.max_extended_rel_diff, r.max_extended_rel_diff);
        for (int b = 0; b < kPointwiseHistBins; ++b) out.histogram[b] += r.histogram[b];
    }
    return out;
}

}  // namespace imethod
