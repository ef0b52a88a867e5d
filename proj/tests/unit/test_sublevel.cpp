#include <gtest/gtest.h>

#include <cmath>

#include "imethod/error.hpp"
#include "imethod/sublevel.hpp"

using namespace imethod;

namespace {

SublevelQuery line_query() {
    SublevelQuery q;
    q.weight = WeightKind::constant;
    q.phase = PhaseKind::linear;
    q.linear_index = 0;
    q.free_indices = {0, 4};
    q.box_lo = -1.0;
    q.box_hi = 1.0;
    return q;
}

// Midpoint rule over the line variable; slow but independent of the root finding.
double scan_1d(const SublevelQuery& q, int n) {
    const int line = q.free_indices[0];
    const int dep = q.free_indices[1];
    const double h = (q.box_hi - q.box_lo) / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        std::array<double, 5> x = q.fixed;
        const double t = q.box_lo + (i + 0.5) * h;
        double c = 0.0;
        for (int j = 0; j < 5; ++j) {
            if (j != line && j != dep) c += x[j];
        }
        x[line] = t;
        x[dep] = -(c + t);
        const double g = std::abs(phase_value(q, x) - q.alpha);
        const double w = weight_value(q, x);
        if (q.restriction == Restriction::sublevel) {
            if (g < q.K) total += w * h;
        } else if (g > q.K) {
            total += w / g * h;
        }
    }
    return total;
}

}  // namespace

TEST(Sublevel, Names) {
    EXPECT_EQ(parse_weight_kind("d3"), WeightKind::d3);
    EXPECT_EQ(to_string(WeightKind::basic_smoothing), "basic_smoothing");
    EXPECT_EQ(parse_restriction("quotient_tail"), Restriction::quotient_tail);
    EXPECT_THROW(parse_weight_kind("gaussian"), DomainError);
}

TEST(Sublevel, ValidatesQuery) {
    SublevelQuery q = line_query();
    q.K = 0.0;
    EXPECT_THROW(q.validate(), DomainError);
    q = line_query();
    q.free_indices = {0, 0};
    EXPECT_THROW(q.validate(), DomainError);
    q = line_query();
    q.box_hi = q.box_lo;
    EXPECT_THROW(q.validate(), DomainError);
    EXPECT_THROW(sublevel_integral(line_query(), 999, 1), DomainError);
}

TEST(Sublevel, LinearPhaseInOneDimensionIsExact) {
    SublevelQuery q = line_query();
    q.alpha = 0.2;
    q.K = 0.1;
    const Estimate e = sublevel_integral(q, 1000, 1);
    EXPECT_NEAR(e.value, 0.2, 1e-14);
    EXPECT_EQ(e.std_error, 0.0);
}

TEST(Sublevel, LinearPhaseInTwoDimensions) {
    SublevelQuery q = line_query();
    q.free_indices = {1, 0, 4};
    q.K = 0.05;
    const Estimate e = sublevel_integral(q, 4096, 2);
    EXPECT_NEAR(e.value, 2.0 * 2.0 * 0.05, 1e-12);
}

TEST(Sublevel, CubicPhaseMatchesScan) {
    SublevelQuery q;
    q.weight = WeightKind::basic_smoothing;
    q.free_indices = {0, 4};
    q.fixed = {0, 3.0, -1.5, 2.0, 0};
    q.box_lo = -8;
    q.box_hi = 8;
    q.alpha = 20.0;
    q.K = 4.0;
    const double ref = scan_1d(q, 2'000'000);
    EXPECT_NEAR(sublevel_integral(q, 1000, 1).value, ref, 1e-4 * ref);

    q.restriction = Restriction::quotient_tail;
    const double ref_tail = scan_1d(q, 2'000'000);
    EXPECT_NEAR(sublevel_integral(q, 1000, 1).value, ref_tail, 1e-4 * ref_tail);
}

TEST(Sublevel, ConditionalAgreesWithHitOrMiss) {
    SublevelQuery q;
    q.weight = WeightKind::basic_smoothing;
    q.free_indices = {0, 1, 4};
    q.fixed = {0, 0, 2.0, -3.0, 0};
    q.N = 4;
    set_default_box(q);
    q.K = 8.0;
    const Estimate a = sublevel_integral(q, 20000, 3);
    const Estimate b = sublevel_integral_hit_or_miss(q, 400000, 4);
    EXPECT_GT(a.value, 0.0);
    EXPECT_LT(std::abs(a.value - b.value), 4.0 * std::hypot(a.std_error, b.std_error));
    // Per-sample variance is lower with the exact line integral.
    EXPECT_LT(a.std_error * std::sqrt(20000.0), b.std_error * std::sqrt(400000.0));
}

TEST(Sublevel, DeterministicGivenSeed) {
    SublevelQuery q;
    q.weight = WeightKind::d3;
    q.free_indices = {0, 1, 4};
    q.fixed = {0, 0, 5.0, -7.0, 0};
    set_default_box(q);
    const Estimate a = sublevel_integral(q, 3000, 9);
    const Estimate b = sublevel_integral(q, 3000, 9);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Sublevel, MonotoneInK) {
    SublevelQuery q;
    q.weight = WeightKind::constant;
    q.free_indices = {0, 1, 4};
    q.fixed = {0, 0, 2.0, -3.0, 0};
    q.N = 4;
    set_default_box(q);
    double prev = 0.0;
    for (double K : {0.5, 1.0, 2.0, 4.0}) {
        q.K = K;
        const double v = sublevel_integral(q, 2000, 5).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(SweepSup, LinearToySlopeIsOne) {
    SublevelQuery q = line_query();
    q.free_indices = {1, 2, 0, 4};
    const auto levels = dyadic_levels(-7, 0);
    const ScalingReport r = sweep_sup(q, 4, levels, 1000, 1);
    ASSERT_FALSE(r.fit.degenerate);
    EXPECT_NEAR(r.fit.slope, 1.0, 0.02);
    EXPECT_EQ(r.levels.size(), 8u);
    EXPECT_EQ(r.argmax_config.size(), 8u);
    const auto j = to_json(r);
    for (const char* key : {"weight", "levels", "estimates", "stderr", "slope", "slope_ci", "argmax_config", "seed"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST(SweepSup, RefusesShortLevelLists) {
    const auto levels = dyadic_levels(-3, 0);
    EXPECT_THROW(sweep_sup(line_query(), 4, levels, 1000, 1), DomainError);
    EXPECT_THROW(sweep_sup(line_query(), 0, dyadic_levels(-7, 0), 1000, 1), DomainError);
}
