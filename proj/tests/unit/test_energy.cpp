#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "imethod/energy.hpp"
#include "imethod/error.hpp"
#include "imethod/solver.hpp"
#include "imethod/trajectory_io.hpp"
#include "oracles.hpp"

using namespace imethod;

namespace {

SpectralField field_on(const FrequencyGrid& g, std::initializer_list<int> modes, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    SpectralField u(g);
    for (int n : modes) u.set(n, std::polar(mag(rng), ph(rng)));
    return u;
}

TrackerConfig exact_tracker() {
    TrackerConfig c;
    c.amp_threshold = 0.0;
    return c;
}

}  // namespace

TEST(EnergyE1, MatchesPhysicalQuadratureOfIu) {
    const FrequencyGrid g(2 * M_PI, 64);
    const SpectralField u = field_on(g, {1, 3, 8, 13, 20}, 1);
    const MultiplierParams p(-0.1, 5);
    SpectralField Iu(g);
    for (int n = 0; n <= g.max_index(); ++n) Iu.set(n, m_eval(p, g.wavenumber(n)) * u.coeff(n));
    double quad = 0.0;
    for (double v : to_physical(Iu)) quad += v * v;
    quad *= g.length() / g.modes();
    EXPECT_NEAR(energy_E1(u, p), quad, 1e-13 * quad);
}

TEST(Lambda5, MatchesExtendedPrecisionBruteForce) {
    const FrequencyGrid g(2 * M_PI, 64);
    const SpectralField u = field_on(g, {1, 2, 4, 7, 9, 12}, 2);
    const MultiplierParams p(-0.1, 3);
    const TrackerConfig cfg = exact_tracker();
    const double K = cfg.resolved_K(p);

    const auto m1 = lambda5(u, p, QuinticSymbol::m1, cfg).value;
    const auto m1_ref = oracle::lambda5(u, -0.1, 3, K, false);
    EXPECT_LT(std::abs(m1 - m1_ref), 1e-11 * std::abs(m1_ref));

    const auto corr = lambda5(u, p, QuinticSymbol::correction, cfg).value;
    const auto corr_ref = oracle::lambda5(u, -0.1, 3, K, true);
    EXPECT_LT(std::abs(corr - corr_ref), 1e-11 * std::abs(corr_ref));
    EXPECT_NEAR(quintic_correction(u, p, cfg), corr_ref.real(), 1e-11 * std::abs(corr_ref));
    EXPECT_NEAR(dE1_from_lambda5(u, p, cfg), 0.4 * m1_ref.imag(), 1e-11 * std::abs(m1_ref));
}

TEST(Lambda5, NonUnitLatticeSpacing) {
    const FrequencyGrid g(5.0, 32);
    const SpectralField u = field_on(g, {1, 2, 3, 5, 6}, 3);
    const MultiplierParams p(-0.05, 2);
    const TrackerConfig cfg = exact_tracker();
    const auto corr = lambda5(u, p, QuinticSymbol::correction, cfg).value;
    const auto ref = oracle::lambda5(u, -0.05, 2, cfg.resolved_K(p), true);
    EXPECT_LT(std::abs(corr - ref), 1e-11 * std::abs(ref));
}

TEST(Lambda5, VanishesWhenSIsZero) {
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 2, 5, 9}, 4);
    const MultiplierParams p(0.0, 2);
    EXPECT_EQ(lambda5(u, p, QuinticSymbol::m1, exact_tracker()).value, std::complex<double>{});
    EXPECT_EQ(quintic_correction(u, p, exact_tracker()), 0.0);
}

TEST(Lambda5, TranslationInvariant) {
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 2, 5, 9, 11}, 5);
    SpectralField v(g);
    for (int n = 0; n <= g.max_index(); ++n) v.set(n, u.coeff(n) * std::polar(1.0, 0.7 * n));
    const MultiplierParams p(-0.1, 3);
    const auto a = lambda5(u, p, QuinticSymbol::correction, exact_tracker()).value;
    const auto b = lambda5(v, p, QuinticSymbol::correction, exact_tracker()).value;
    EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(a));
}

TEST(Lambda5, CutoffBelowLatticeGapIsIrrelevant) {
    // With dk = 1 every nonzero Phi5 on the lattice has |Phi5| >= 6.
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 2, 5, 9, 11}, 6);
    const MultiplierParams p(-0.1, 3);
    TrackerConfig a = exact_tracker();
    TrackerConfig b = exact_tracker();
    a.K = 1e-3;
    b.K = 5.9;
    EXPECT_EQ(quintic_correction(u, p, a), quintic_correction(u, p, b));
    b.K = 1e9;
    EXPECT_EQ(quintic_correction(u, p, b), 0.0);
}

TEST(Lambda5, QuadrupleCountAndBudget) {
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 2, 3}, 7);
    const MultiplierParams p(-0.1, 1);
    const QuinticSum r = lambda5(u, p, QuinticSymbol::m1, exact_tracker());
    EXPECT_EQ(r.active_modes, 6);
    // Ordered quadruples over 6 active modes with n5 representable (|n5| <= 15): all of them.
    EXPECT_EQ(r.quadruples, 6 * 6 * 6 * 6);

    TrackerConfig tight = exact_tracker();
    tight.budget = 100;
    EXPECT_THROW(lambda5(u, p, QuinticSymbol::m1, tight), BudgetError);
    TrackerConfig cut = exact_tracker();
    cut.mode_cutoff = 2.5;
    EXPECT_EQ(lambda5(u, p, QuinticSymbol::m1, cut).active_modes, 4);
}

TEST(Tracker, ValidateAndAutoK) {
    TrackerConfig c;
    EXPECT_DOUBLE_EQ(c.resolved_K(MultiplierParams(-0.1, 16)), 0.25);
    c.K = 2.0;
    EXPECT_DOUBLE_EQ(c.resolved_K(MultiplierParams(-0.1, 16)), 2.0);
    c.stride = 0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(EnergyRecord, E2IsE1PlusCorrection) {
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 4, 6, 10}, 8);
    const MultiplierParams p(-0.1, 3);
    const EnergyRecord r = energy_record(0.5, u, p, exact_tracker());
    EXPECT_EQ(r.t, 0.5);
    EXPECT_EQ(r.E2, r.E1 + r.corr5);
    std::ostringstream os;
    write_energy_csv_header(os);
    write_energy_csv_row(os, r);
    EXPECT_NE(os.str().find("t,E1,corr5,E2,dE1_fd,dE1_lambda5\n"), std::string::npos);
    EXPECT_NE(os.str().find(",nan,nan\n"), std::string::npos);
}

TEST(DerivativeCrosscheck, AgreesOnShortRun) {
    const FrequencyGrid g(2 * M_PI, 32);
    const SpectralField u = field_on(g, {1, 2, 3, 5, 7, 9}, 9);
    const MultiplierParams p(-0.1, 3);
    SolverConfig c;
    c.dt = 1e-5;
    c.T_end = 4e-4;
    Trajectory traj;
    run(u, c, 4, {[&](double t, const SpectralField& v) { traj.push_back({t, v}); }});
    const CrosscheckResult r = derivative_crosscheck(traj, p, exact_tracker());
    EXPECT_GT(r.scale, 0.0);
    EXPECT_LT(r.max_relative_mismatch, 1e-4);
    EXPECT_EQ(r.records.size(), traj.size());
}

TEST(DerivativeCrosscheck, RejectsBadTrajectories) {
    const FrequencyGrid g(2 * M_PI, 16);
    const SpectralField u(g);
    const MultiplierParams p(-0.1, 3);
    EXPECT_THROW(derivative_crosscheck({{0.0, u}, {0.1, u}}, p, {}), DomainError);
    EXPECT_THROW(derivative_crosscheck({{0.0, u}, {0.1, u}, {0.3, u}}, p, {}), DomainError);
}

TEST(TrajectoryIo, RoundTrip) {
    const FrequencyGrid g(3.5, 16);
    const SpectralField u = field_on(g, {1, 2, 7}, 10);
    std::stringstream ss;
    write_trajectory_header(ss, g);
    write_snapshot(ss, 0.0, u);
    write_snapshot(ss, 0.25, u);
    const Trajectory t = read_trajectory(ss);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[1].t, 0.25);
    EXPECT_TRUE(t[1].u.grid() == g);
    for (int n = 0; n <= g.max_index(); ++n) EXPECT_EQ(t[1].u.coeff(n), u.coeff(n));

    std::stringstream bad("# something else\n");
    EXPECT_THROW(read_trajectory(bad), Error);
}
