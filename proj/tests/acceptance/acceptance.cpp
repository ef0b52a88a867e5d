// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "imethod/energy.hpp"
#include "imethod/error.hpp"
#include "imethod/geometry.hpp"
#include "imethod/initial_data.hpp"
#include "imethod/multiplier.hpp"
#include "imethod/planner.hpp"
#include "imethod/solver.hpp"
#include "imethod/sublevel.hpp"
#include "imethod/sweep.hpp"
#include "oracles.hpp"

using namespace imethod;

namespace {

constexpr double kS = -1.0 / 48.0;
constexpr double kEps = 0.05;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. Pointwise sup bounded with no growth in N.
Outcome pointwise() {
    constexpr std::int64_t kSamples = 1'000'000;
    constexpr double kMaxOverMin = 3.0;
    double lo = INFINITY, hi = 0.0;
    std::string sups;
    for (int e = 4; e <= 10; ++e) {
        const PointwiseSup r = pointwise_sup(MultiplierParams(kS, std::ldexp(1.0, e)), kSamples, kEps,
                                             kSeed + static_cast<std::uint64_t>(e));
        lo = std::min(lo, r.sup);
        hi = std::max(hi, r.sup);
        sups += fmt(" %.4f", r.sup);
    }
    return {lo > 0.0 && hi / lo <= kMaxOverMin, fmt("sup per N:%s  max/min %.3f (limit %.1f)", sups.c_str(), hi / lo, kMaxOverMin)};
}

ScalingReport sublevel_sweep(WeightKind w, PhaseKind phase, std::vector<int> free, Restriction r,
                             std::optional<std::pair<double, double>> box, int configs) {
    SublevelQuery q;
    q.weight = w;
    q.phase = phase;
    q.linear_index = 0;
    q.free_indices = std::move(free);
    q.restriction = r;
    q.s = kS;
    q.eps = kEps;
    q.N = 16;
    if (box) {
        q.box_lo = box->first;
        q.box_hi = box->second;
    } else {
        set_default_box(q);
    }
    return sweep_sup(q, configs, dyadic_levels(-7, 0), 2000, kSeed);
}

// 2. Sublevel K-scaling: basic smoothing slope in [0.9, 1.1], linear toy in [0.98, 1.02].
Outcome sublevel() {
    const ScalingReport basic = sublevel_sweep(WeightKind::basic_smoothing, PhaseKind::phi5, {0, 1, 4},
                                               Restriction::sublevel, std::nullopt, 64);
    const ScalingReport toy = sublevel_sweep(WeightKind::constant, PhaseKind::linear, {1, 2, 0, 4},
                                             Restriction::sublevel, std::make_pair(-1.0, 1.0), 16);
    const bool ok = !basic.fit.degenerate && !toy.fit.degenerate && basic.fit.slope >= 0.9 &&
                    basic.fit.slope <= 1.1 && toy.fit.slope >= 0.98 && toy.fit.slope <= 1.02;
    return {ok, fmt("basic smoothing slope %.4f in [0.9, 1.1]; linear toy slope %.4f in [0.98, 1.02]",
                    basic.fit.slope, toy.fit.slope)};
}

// 3. Quotient tail: slope in [-0.15, 0.05].
Outcome quotient() {
    const ScalingReport r = sublevel_sweep(WeightKind::d3, PhaseKind::phi5, {0, 1, 4}, Restriction::quotient_tail,
                                           std::nullopt, 16);
    const bool ok = !r.fit.degenerate && r.fit.slope >= -0.15 && r.fit.slope <= 0.05;
    return {ok, fmt("slope %.4f +- %.4f in [-0.15, 0.05]", r.fit.slope, r.fit.slope_ci)};
}

SpectralField random_phase(const FrequencyGrid& g, int band_max, double Hs, double s, std::uint64_t seed) {
    InitialDataSpec spec;
    spec.Hs_target = Hs;
    spec.s = s;
    spec.band_max = band_max;
    spec.seed = seed;
    return make_initial_data(spec, g);
}

double distance(const SpectralField& a, const SpectralField& b) {
    double acc = 0.0;
    for (int n = 0; n <= a.grid().max_index(); ++n) acc += std::norm(a.coeff(n) - b.coeff(n));
    return std::sqrt(acc);
}

// 4. Solver: linear phase, zero mode, L2 drift, Richardson order.
Outcome solver() {
    const FrequencyGrid g(2 * M_PI, 256);
    SolverConfig c;
    c.dt = 1e-4;
    c.T_end = 1.0;

    SpectralField single(g);
    single.set(7, 0.25);
    SolverConfig lin = c;
    lin.nonlinear = false;
    const RunResult lr = run(single, lin, 1 << 30);
    const double phase_err = std::abs(std::arg(lr.final_state.coeff(7) / single.coeff(7)) -
                                      std::remainder(343.0, 2 * M_PI));

    SpectralField u = random_phase(g, 32, 0.5, 0.0, kSeed);
    u.set(0, 0.1);
    const RunResult nr = run(u, c, 1 << 30);
    const bool zero_const = nr.final_state.coeff(0) == u.coeff(0);
    const double drift = std::abs(nr.final_state.l2_squared() - u.l2_squared()) / u.l2_squared();

    SolverConfig rc;
    rc.T_end = 0.1;
    const SpectralField v = random_phase(FrequencyGrid(2 * M_PI, 32), 8, 1.0, 0.0, kSeed);
    auto at = [&](double dt) {
        rc.dt = dt;
        return run(v, rc, 1 << 30).final_state;
    };
    const SpectralField a = at(1e-3), b = at(5e-4), d = at(2.5e-4);
    const double order = std::log2(distance(a, b) / distance(b, d));

    const bool ok = phase_err < 1e-8 && zero_const && drift < 1e-6 && order >= 3.7 && order <= 4.3;
    return {ok, fmt("phase error %.2e (<1e-8); zero mode %s; L2 drift %.2e (<1e-6); order %.3f in [3.7, 4.3]",
                    phase_err, zero_const ? "exact" : "changed", drift, order)};
}

// 5. Finite-difference dE1/dt against the quintic sum, M = 64, N = 8.
Outcome derivative() {
    const FrequencyGrid g(2 * M_PI, 64);
    const SpectralField u = random_phase(g, 12, 1.0, 0.0, 3);
    SolverConfig c;
    c.dt = 1e-5;
    c.T_end = 1e-3;
    Trajectory traj;
    run(u, c, 2, {[&](double t, const SpectralField& v) { traj.push_back({t, v}); }});
    TrackerConfig tc;
    const CrosscheckResult r = derivative_crosscheck(traj, MultiplierParams(kS, 8), tc);
    return {r.max_relative_mismatch < 1e-3,
            fmt("max relative mismatch %.3e (<1e-3) over %zu samples", r.max_relative_mismatch, traj.size())};
}

// 6. quintic_correction against the exhaustive 50-digit sum on six active modes.
Outcome brute_force() {
    const FrequencyGrid g(2 * M_PI, 64);
    SpectralField u(g);
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    for (int n : {1, 3, 4, 8, 11, 17}) u.set(n, std::polar(1.0 / n, ph(rng)));
    const MultiplierParams p(kS, 2);
    TrackerConfig tc;
    tc.amp_threshold = 0.0;
    const double got = quintic_correction(u, p, tc);
    const auto ref = oracle::lambda5(u, kS, 2, tc.resolved_K(p), true);
    const double rel = std::abs(got - ref.real()) / std::abs(ref.real());
    return {rel < 1e-10, fmt("corr5 %.15e vs %.15e, relative %.2e (<1e-10)", got, ref.real(), rel)};
}

// 7. Almost conservation over N in {4, 8, 16, 32}.
Outcome almost_conservation() {
    const FrequencyGrid g(2 * M_PI, 128);
    const SpectralField u = random_phase(g, 63, 0.5, kS, kSeed);
    SweepInput in;
    in.N_list = {4, 8, 16, 32};
    in.s = kS;
    in.solver.dt = 1e-5;
    in.solver.T_end = 1.0;
    in.tracker.stride = 5000;
    const SweepReport r = almost_conservation_sweep(u, in);
    bool a = !r.partial;
    for (std::size_t i = 0; i < r.N.size(); ++i) a = a && r.supdE2[i] <= r.supdE1[i];
    const bool fit = !r.fit_E1.degenerate && !r.fit_E2.degenerate;
    const bool b = fit && r.fit_E2.slope <= -0.8 + 0.15;
    const bool c = fit && r.fit_E2.slope <= r.fit_E1.slope - 0.3;
    return {a && b && c, fmt("(a) %s  (b) E2 slope %.3f <= -0.65 %s  (c) E1 slope %.3f, gap %.3f >= 0.3 %s",
                             a ? "ok" : "FAIL", r.fit_E2.slope, b ? "ok" : "FAIL", r.fit_E1.slope,
                             r.fit_E1.slope - r.fit_E2.slope, c ? "ok" : "FAIL")};
}

// 8. Jacobian vs finite differences and the Morse stationary points.
Outcome geometry() {
    double worst = 0.0;
    bool counts = true;
    std::uint64_t k = 0;
    for (JacobianPair pair : {JacobianPair::xi1_xi3, JacobianPair::xi_xi2, JacobianPair::xi_xi7}) {
        const JacobianFdCheck r = jacobian_fd_check(pair, 16, 10000, kSeed + k++);
        worst = std::max(worst, r.max_rel_error);
        counts = counts && r.accepted == 10000;
    }
    int found = 0;
    double grad = 0.0, det = INFINITY;
    for (MorseFamily f : {MorseFamily::refined_case_b, MorseFamily::d3_case_B}) {
        std::set<std::pair<long, long>> distinct;
        for (const auto& sp : stationary_points(f)) {
            const MorseResult r = morse_check(f, {sp[0] + 0.04, sp[1] - 0.03});
            grad = std::max(grad, r.gradient_norm);
            det = std::min(det, std::abs(r.hessian_det));
            distinct.insert({std::lround(r.point[0] * 1e6), std::lround(r.point[1] * 1e6)});
        }
        found += static_cast<int>(distinct.size());
    }
    const bool ok = counts && worst < 1e-6 && found == 8 && grad < 1e-10 && det > 1e-6;
    return {ok, fmt("jacobian max rel error %.2e (<1e-6) on 3 x 1e4 samples; %d/8 stationary points, "
                    "max |grad P| %.1e (<1e-10), min |det D2P| %.3f (>1e-6)",
                    worst, found, grad, det)};
}

// 9. Planner relations.
Outcome planner() {
    const bool eta = eta_min(-1.0 / 48.0) == 1.0 / 12.0;
    PlanInput in;
    const Plan p = make_plan(in);
    const double lhs = std::pow(p.N, p.exponent);
    const double rhs = std::pow(p.rho, 3) * in.T;
    const double rel_N = std::abs(lhs - rhs) / rhs;
    const double lam = p.rho * std::pow(p.N, -6.0 * in.s / (1.0 + 6.0 * in.s));
    const double rel_l = std::abs(p.lambda - lam) / lam;
    const double rho = std::pow(in.u0_norm / in.eps0, 1.0 / (1.0 / 6.0 + in.s));
    const double rel_r = std::abs(p.rho - rho) / rho;
    bool rejected = false;
    try {
        PlanInput bad;
        bad.s = -(1.0 - bad.eps) / 24.0;
        make_plan(bad);
    } catch (const DomainError&) {
        rejected = true;
    }
    const bool ok = eta && rel_N < 1e-12 && rel_l < 1e-12 && rel_r < 1e-12 && rejected;
    return {ok, fmt("eta_min(-1/48) %s 1/12; relations %.1e %.1e %.1e (<1e-12); boundary s %s",
                    eta ? "==" : "!=", rel_N, rel_l, rel_r, rejected ? "rejected" : "accepted")};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, pointwise}, {2, sublevel}, {3, quotient}, {4, solver}, {5, derivative},
        {6, brute_force}, {7, almost_conservation}, {8, geometry}, {9, planner},
    };
    int failed = 0;
    for (const auto& [id, fn] : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), sec);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
