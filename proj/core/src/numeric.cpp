#include "imethod/numeric.hpp"

#include <boost/math/distributions/students_t.hpp>

namespace imethod {

std::mt19937_64 chunk_engine(std::uint64_t master_seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(chunk >> 32), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    LogLogFit fit;
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) return fit;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) return fit;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(y[i]) - (fit.intercept + fit.slope * std::log(x[i]));
        sse += r * r;
    }
    const double dof = static_cast<double>(n - 2);
    fit.slope_stderr = std::sqrt(sse / dof / sxx);
    const boost::math::students_t dist(dof);
    fit.slope_ci = boost::math::quantile(boost::math::complement(dist, 0.025)) * fit.slope_stderr;
    fit.degenerate = false;
    return fit;
}

std::vector<double> dyadic_levels(int lo, int hi) {
    std::vector<double> levels;
    for (int k = lo; k <= hi; ++k) levels.push_back(std::ldexp(1.0, k));
    return levels;
}

}  // namespace imethod
