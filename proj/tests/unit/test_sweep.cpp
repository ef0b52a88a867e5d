#include <gtest/gtest.h>

#include <cmath>

#include "imethod/error.hpp"
#include "imethod/initial_data.hpp"
#include "imethod/sweep.hpp"

using namespace imethod;

namespace {

SpectralField small_data() {
    InitialDataSpec spec;
    spec.Hs_target = 0.5;
    spec.band_max = 15;
    return make_initial_data(spec, FrequencyGrid(2 * M_PI, 32));
}

SweepInput small_input(std::vector<double> N_list, double s) {
    SweepInput in;
    in.N_list = std::move(N_list);
    in.s = s;
    in.solver.dt = 1e-4;
    in.solver.T_end = 0.02;
    in.tracker.stride = 50;
    in.seed = 4;
    in.config_hash = "abc";
    return in;
}

}  // namespace

TEST(Sweep, SeriesShareTimesAndStartAtZeroIncrement) {
    const SweepReport r = almost_conservation_sweep(small_data(), small_input({2, 4, 8}, -0.1));
    ASSERT_EQ(r.series.size(), 3u);
    for (const auto& s : r.series) {
        ASSERT_EQ(s.size(), r.series[0].size());
        EXPECT_EQ(s.front().t, 0.0);
        EXPECT_EQ(s.back().t, 0.02);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        double d = 0.0;
        for (const auto& e : r.series[i]) d = std::max(d, std::abs(e.E1 - r.series[i][0].E1));
        EXPECT_EQ(r.supdE1[i], d);
        EXPECT_DOUBLE_EQ(r.K[i], 1.0 / std::sqrt(r.N[i]));
    }
    EXPECT_FALSE(r.partial);
    EXPECT_EQ(r.M, 32);
}

TEST(Sweep, SingleNIsFlaggedDegenerate) {
    const SweepReport r = almost_conservation_sweep(small_data(), small_input({4}, -0.1));
    EXPECT_TRUE(r.fit_E1.degenerate);
    EXPECT_TRUE(r.fit_E2.degenerate);
    EXPECT_EQ(r.supdE1.size(), 1u);
    const auto j = to_json(r);
    EXPECT_TRUE(j["slopes"]["E1"].is_null());
    EXPECT_TRUE(j["degenerate"]["E2"].get<bool>());
}

TEST(Sweep, SZeroIsDegenerate) {
    const SweepReport r = almost_conservation_sweep(small_data(), small_input({2, 4, 8}, 0.0));
    EXPECT_TRUE(r.fit_E1.degenerate);
    for (double d : r.supdE1) EXPECT_LT(d, 1e-10);
}

TEST(Sweep, JsonSchema) {
    const auto j = to_json(almost_conservation_sweep(small_data(), small_input({2, 4, 8}, -0.1)));
    for (const char* k : {"N", "K", "supdE1", "supdE2", "slopes", "ci", "degenerate", "partial", "t_reached",
                          "L", "M", "seeds", "config_hash"}) {
        EXPECT_TRUE(j.contains(k)) << k;
    }
    EXPECT_EQ(j["config_hash"], "abc");
}

TEST(Sweep, BlowUpGivesPartialReport) {
    InitialDataSpec spec;
    spec.Hs_target = 200.0;
    spec.band_max = 6;
    const SpectralField u = make_initial_data(spec, FrequencyGrid(2 * M_PI, 16));
    SweepInput in = small_input({2, 4}, -0.1);
    in.solver.dt = 0.05;
    in.solver.T_end = 20.0;
    in.tracker.stride = 1;
    const SweepReport r = almost_conservation_sweep(u, in);
    EXPECT_TRUE(r.partial);
    EXPECT_LT(r.t_reached, 20.0);
}

TEST(Sweep, EmptyListRefused) {
    EXPECT_THROW(almost_conservation_sweep(small_data(), small_input({}, -0.1)), DomainError);
}
