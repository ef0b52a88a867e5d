#pragma once

// Scalar symbols of the I-method energies: the damping multiplier m, the
// resonance function Phi_n, the quintic symbol M1 = sum m_j^2 xi_j, the cut-off
// normal-form symbol, and the pointwise-bound ratio.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace imethod {

/// Default slack for the "a^+ / a^-" exponents.
inline constexpr double kDefaultSlack = 0.05;

/// The pair (s, N) that defines the I-operator. Requires s in (-1/6, 0] and N >= 1.
class MultiplierParams {
public:
    MultiplierParams(double s, double N);

    double s() const noexcept { return s_; }
    double N() const noexcept { return N_; }

private:
    double s_;
    double N_;
};

/// An ordered list of 2..8 real frequencies.
class FrequencyTuple {
public:
    static constexpr std::size_t kMaxSize = 8;

    FrequencyTuple(std::initializer_list<double> xs);
    explicit FrequencyTuple(std::span<const double> xs);

    std::size_t size() const noexcept { return size_; }
    double operator[](std::size_t i) const { return xs_[i]; }
    double& operator[](std::size_t i) { return xs_[i]; }
    std::span<const double> values() const noexcept { return {xs_.data(), size_}; }

    double sum() const;
    double max_abs() const;
    /// Absolute hyperplane tolerance 1e-9 * max(1, max|xi_j|).
    double gamma_tolerance() const;
    bool on_gamma() const;
    /// Throws DomainError when the tuple is off the zero-sum hyperplane.
    void require_on_gamma(const char* who) const;
    FrequencyTuple negated() const;

private:
    std::array<double, kMaxSize> xs_{};
    std::size_t size_ = 0;
};

/// Symbol value together with a flag that records a suppressed singularity.
struct SymbolValue {
    double value = 0.0;
    /// True when the cut-off removed a point where the uncut symbol has a
    /// nonzero numerator over |Phi_5| <= K (a genuine singular contribution).
    bool singular_flag = false;
};

/// m(xi): 1 below N, (|xi|/N)^s above.
double m_eval(const MultiplierParams& p, double xi);

/// Phi_n = sum xi_j^3. No hyperplane check.
double phi_n(const FrequencyTuple& t);

/// M1 = sum_j m(xi_j)^2 xi_j on Gamma_5.
double m1_symbol(const MultiplierParams& p, const FrequencyTuple& t);

/// Same sum accumulated in long double; used as a cross-check for cancellation.
long double m1_symbol_extended(const MultiplierParams& p, const FrequencyTuple& t);

/// M5' = -2 M1 / (5 Phi_5) on {|Phi_5| > K}, zero elsewhere.
SymbolValue m5_prime(const MultiplierParams& p, const FrequencyTuple& t, double K);

/// |M1 / (m_1...m_5)| divided by max_j |xi_j| <xi_j>^{1/2-eps} / N^{1/2-eps}.
double pointwise_ratio(const MultiplierParams& p, const FrequencyTuple& t, double eps);

/// Monte Carlo sup of pointwise_ratio. Each sample draws xi_1..xi_4 log-uniformly in
/// [N/100, 100 N] with random signs and sets xi_5 = -(xi_1 + .. + xi_4).
struct PointwiseSup {
    double sup = 0.0;
    std::array<double, 5> argmax{};
    std::int64_t samples = 0;
    std::int64_t nonzero = 0;
    /// max |M1 - M1_extended| / max(|M1_extended|, tiny) over samples with M1 != 0
    double max_extended_rel_diff = 0.0;
    /// Counts of log10(ratio) in [-8, 2) split into 40 bins; zeros are not binned.
    std::vector<std::int64_t> histogram;
};

inline constexpr double kPointwiseHistLo = -8.0;
inline constexpr double kPointwiseHistHi = 2.0;
inline constexpr int kPointwiseHistBins = 40;

PointwiseSup pointwise_sup(const MultiplierParams& p, std::int64_t samples, double eps,
                           std::uint64_t seed);

}  // namespace imethod
