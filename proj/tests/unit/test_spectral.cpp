#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "imethod/error.hpp"
#include "imethod/spectral.hpp"
#include "oracles.hpp"

using namespace imethod;

namespace {

std::vector<double> random_values(int M, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> x(static_cast<std::size_t>(M));
    for (double& v : x) v = g(rng);
    return x;
}

}  // namespace

TEST(FrequencyGrid, Wavenumbers) {
    const FrequencyGrid g(4.0 * M_PI, 16);
    EXPECT_DOUBLE_EQ(g.dk(), 0.5);
    EXPECT_EQ(g.max_index(), 7);
    EXPECT_DOUBLE_EQ(g.wavenumber(-3), -1.5);
    EXPECT_DOUBLE_EQ(g.parseval(), 4.0 * M_PI);
}

TEST(SpectralField, HermitianStorage) {
    const FrequencyGrid g(2 * M_PI, 16);
    SpectralField u(g);
    u.set(3, {1.0, 2.0});
    u.set(0, {5.0, 7.0});
    EXPECT_EQ(u.coeff(-3), std::complex<double>(1.0, -2.0));
    EXPECT_EQ(u.coeff(0), std::complex<double>(5.0, 0.0));
    EXPECT_EQ(u.coeff(8), std::complex<double>{});
    EXPECT_EQ(u.coeff(-100), std::complex<double>{});
    EXPECT_DOUBLE_EQ(u.power(), 25.0 + 2 * 5.0);
}

TEST(SpectralField, TransformMatchesNaiveDft) {
    const int M = 24;
    const FrequencyGrid g(3.0, M);
    const auto x = random_values(M, 1);
    const SpectralField u = from_physical(g, x);
    const auto ref = oracle::naive_dft(x);
    for (int n = 0; n <= g.max_index(); ++n) {
        EXPECT_NEAR(u.coeff(n).real(), ref[n].real(), 1e-13);
        EXPECT_NEAR(u.coeff(n).imag(), ref[n].imag(), 1e-13);
    }
}

TEST(SpectralField, RoundTripWithoutNyquist) {
    const FrequencyGrid g(2 * M_PI, 32);
    SpectralField u(g);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n01;
    for (int n = 0; n <= g.max_index(); ++n) u.set(n, {n01(rng), n01(rng)});
    const SpectralField v = from_physical(g, to_physical(u));
    for (int n = 0; n <= g.max_index(); ++n) EXPECT_LT(std::abs(u.coeff(n) - v.coeff(n)), 1e-14);
}

TEST(SpectralField, ParsevalAgainstQuadrature) {
    const FrequencyGrid g(5.0, 64);
    SpectralField u(g);
    u.set(1, {0.3, -0.1});
    u.set(4, {0.0, 0.7});
    u.set(0, 0.2);
    const auto x = to_physical(u);
    double quad = 0.0;
    for (double v : x) quad += v * v;
    quad *= g.length() / g.modes();
    EXPECT_NEAR(u.l2_squared(), quad, 1e-13);
}

TEST(SpectralField, HsNorm) {
    const FrequencyGrid g(2 * M_PI, 16);
    SpectralField u(g);
    u.set(2, 1.0);
    // Two modes (n = +-2) of weight <2>^{2s}.
    EXPECT_NEAR(u.hs_squared(-0.5), 2 * M_PI * 2.0 / std::sqrt(5.0), 1e-13);
}

TEST(Rescale, ScalesCoefficientsAndLength) {
    const FrequencyGrid g(2 * M_PI, 16);
    SpectralField u(g);
    u.set(3, {1.0, 1.0});
    const double lambda = 8.0;
    const SpectralField v = rescale(u, lambda);
    EXPECT_DOUBLE_EQ(v.grid().length(), lambda * g.length());
    EXPECT_NEAR(std::abs(v.coeff(3)), std::abs(u.coeff(3)) * std::pow(lambda, -2.0 / 3.0), 1e-15);
    // Physical check: u^lambda(x) = lambda^{-2/3} u(x / lambda) at the grid points.
    const auto xu = to_physical(u);
    const auto xv = to_physical(v);
    for (std::size_t j = 0; j < xu.size(); ++j) {
        EXPECT_NEAR(xv[j], std::pow(lambda, -2.0 / 3.0) * xu[j], 1e-14);
    }
}

TEST(Rescale, OntoFinerGridAndRejectsUnrepresentable) {
    const FrequencyGrid g(2 * M_PI, 16);
    SpectralField u(g);
    u.set(5, 1.0);
    const SpectralField v = rescale_onto(u, 2.0, FrequencyGrid(4 * M_PI, 32));
    EXPECT_NEAR(std::abs(v.coeff(5)), std::pow(2.0, -2.0 / 3.0), 1e-15);
    EXPECT_THROW(rescale_onto(u, 2.0, FrequencyGrid(2 * M_PI, 16)), DomainError);
    EXPECT_THROW(rescale(u, 0.0), DomainError);
}
