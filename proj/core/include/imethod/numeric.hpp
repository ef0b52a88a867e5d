#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace imethod {

/// Japanese bracket <x> = (1 + x^2)^{1/2}.
inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Engine for Monte Carlo chunk `chunk` of a run seeded with `master_seed`.
/// Streams depend only on (master_seed, chunk), never on the thread that runs them.
std::mt19937_64 chunk_engine(std::uint64_t master_seed, std::uint64_t chunk);

/// Ordinary least squares fit of log(y) = slope * log(x) + intercept.
struct LogLogFit {
    double slope = std::nan("");
    double intercept = std::nan("");
    double slope_stderr = std::nan("");
    double slope_ci = std::nan("");  ///< 95% confidence half-width (Student t)
    bool degenerate = true;          ///< set when any y <= 0 or fewer than 3 points
};

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Dyadic levels 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<double> dyadic_levels(int lo, int hi);

}  // namespace imethod
