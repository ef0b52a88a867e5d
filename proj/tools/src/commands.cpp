#include "imethod_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>

#include "imethod/energy.hpp"
#include "imethod/error.hpp"
#include "imethod/geometry.hpp"
#include "imethod/initial_data.hpp"
#include "imethod/multiplier.hpp"
#include "imethod/planner.hpp"
#include "imethod/solver.hpp"
#include "imethod/sublevel.hpp"
#include "imethod/sweep.hpp"
#include "imethod/trajectory_io.hpp"

#ifndef IMETHOD_VERSION
#define IMETHOD_VERSION "unknown"
#endif

namespace imethod::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ostream& log_of(const RunContext& ctx) { return ctx.log ? *ctx.log : std::cerr; }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << std::setprecision(17);
    return os;
}

// Per-N seeds are derived from the global seed so each N sees a fresh sample.
std::uint64_t sub_seed(std::uint64_t seed, std::size_t i) { return seed + 0x9E3779B97F4A7C15ULL * (i + 1); }

SpectralField initial_field(const RunConfig& c) { return make_initial_data(c.initial_data, c.grid()); }

}  // namespace

void write_json(const fs::path& path, const json& j) {
    std::ofstream os = open_out(path);
    os << j.dump(2) << '\n';
}

int cmd_verify_pointwise(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    json per_N = json::array();
    double sup_max = 0.0;
    double sup_min = std::numeric_limits<double>::infinity();
    double ext_diff = 0.0;

    std::ofstream hist = open_out(ctx.out_dir / "pointwise_histogram.csv");
    hist << "N,bin_lo,bin_hi,count\n";
    const double width = (kPointwiseHistHi - kPointwiseHistLo) / kPointwiseHistBins;

    for (std::size_t i = 0; i < c.pointwise.N_list.size(); ++i) {
        const double N = c.pointwise.N_list[i];
        const std::uint64_t seed = sub_seed(c.global.seed, i);
        const PointwiseSup r =
            pointwise_sup(MultiplierParams(c.multiplier.s, N), c.pointwise.samples, c.global.epsilon, seed);
        sup_max = std::max(sup_max, r.sup);
        sup_min = std::min(sup_min, r.sup);
        ext_diff = std::max(ext_diff, r.max_extended_rel_diff);
        per_N.push_back({{"N", N},
                         {"seed", seed},
                         {"sup", r.sup},
                         {"argmax", r.argmax},
                         {"samples", r.samples},
                         {"nonzero", r.nonzero},
                         {"max_extended_rel_diff", r.max_extended_rel_diff},
                         {"histogram", r.histogram}});
        for (int b = 0; b < kPointwiseHistBins; ++b) {
            hist << N << ',' << kPointwiseHistLo + b * width << ',' << kPointwiseHistLo + (b + 1) * width
                 << ',' << r.histogram[static_cast<std::size_t>(b)] << '\n';
        }
        log << "N=" << N << "  sup=" << r.sup << "  nonzero=" << r.nonzero << '\n';
    }

    // With s = 0 the symbol vanishes identically and every sup is 0.
    const double spread = sup_max > 0.0 ? sup_max / sup_min : 1.0;
    const bool bounded = std::isfinite(spread) && spread <= 3.0;
    const bool extended_ok = !c.global.extended_check || ext_diff < 1e-6;
    bool regressed = false;
    if (c.pointwise.baseline_sup) regressed = sup_max > 1.1 * *c.pointwise.baseline_sup;

    const json report = {
        {"command", "verify-pointwise"},
        {"s", c.multiplier.s},
        {"eps", c.global.epsilon},
        {"samples_per_N", c.pointwise.samples},
        {"per_N", per_N},
        {"sup_max", sup_max},
        {"sup_min", sup_min},
        {"max_over_min", number_or_null(spread)},
        {"max_over_min_limit", 3.0},
        {"baseline_sup", c.pointwise.baseline_sup ? json(*c.pointwise.baseline_sup) : json(nullptr)},
        {"regression_limit", 1.1},
        {"regressed", regressed},
        {"max_extended_rel_diff", ext_diff},
        {"histogram_range", {kPointwiseHistLo, kPointwiseHistHi, kPointwiseHistBins}},
        {"pass", bounded && extended_ok && !regressed},
    };
    write_json(ctx.out_dir / "pointwise.json", report);
    log << "max/min over N = " << spread << (regressed ? "  REGRESSED" : "") << '\n';
    if (!extended_ok) log << "warning: long double cross-check differs by " << ext_diff << '\n';
    return report["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

int cmd_verify_sublevel(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    const std::vector<double> levels = dyadic_levels(c.sublevel.level_lo, c.sublevel.level_hi);
    json cases = json::array();
    bool all_pass = true;

    for (std::size_t i = 0; i < c.sublevel.cases.size(); ++i) {
        const SublevelCase& k = c.sublevel.cases[i];
        SublevelQuery q;
        q.weight = k.weight;
        q.phase = k.phase;
        q.linear_index = k.linear_index;
        q.restriction = k.restriction;
        q.free_indices = k.free_indices;
        q.s = c.multiplier.s;
        q.N = c.sublevel.N;
        q.eps = c.global.epsilon;
        if (k.box) {
            q.box_lo = k.box->first;
            q.box_hi = k.box->second;
        } else {
            set_default_box(q);
        }
        const ScalingReport r = sweep_sup(q, c.sublevel.configs, levels, c.sublevel.samples,
                                          sub_seed(c.global.seed, i));
        const bool pass =
            !r.fit.degenerate && r.fit.slope >= k.slope_min && r.fit.slope <= k.slope_max;
        all_pass = all_pass && pass;

        std::ofstream csv = open_out(ctx.out_dir / ("sublevel_" + k.name + ".csv"));
        csv << "K,estimate,stderr\n";
        for (std::size_t l = 0; l < r.levels.size(); ++l) {
            csv << r.levels[l] << ',' << r.estimates[l] << ',' << r.std_errors[l] << '\n';
        }
        json entry = to_json(r);
        entry["name"] = k.name;
        entry["slope_window"] = {k.slope_min, k.slope_max};
        entry["pass"] = pass;
        cases.push_back(entry);
        log << k.name << ": slope " << r.fit.slope << " +- " << r.fit.slope_ci << "  window ["
            << k.slope_min << ", " << k.slope_max << "]  " << (pass ? "ok" : "FAIL") << '\n';
    }

    write_json(ctx.out_dir / "sublevel.json", {{"command", "verify-sublevel"},
                                              {"N", c.sublevel.N},
                                              {"configs", c.sublevel.configs},
                                              {"samples", c.sublevel.samples},
                                              {"cases", cases},
                                              {"pass", all_pass}});
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_verify_geometry(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    const GeometrySection& g = c.geometry;
    std::ostream& log = log_of(ctx);
    bool all_pass = true;

    json jac = json::array();
    const JacobianPair pairs[] = {JacobianPair::xi1_xi3, JacobianPair::xi_xi2, JacobianPair::xi_xi7};
    for (std::size_t i = 0; i < 3; ++i) {
        const JacobianFdCheck r = jacobian_fd_check(pairs[i], g.N, g.jacobian_samples, sub_seed(c.global.seed, i));
        const bool pass = r.accepted == g.jacobian_samples && r.max_rel_error < g.fd_tolerance;
        all_pass = all_pass && pass;
        jac.push_back({{"pair", to_string(pairs[i])},
                       {"max_rel_error", r.max_rel_error},
                       {"accepted", r.accepted},
                       {"drawn", r.drawn},
                       {"pass", pass}});
        log << "jacobian " << to_string(pairs[i]) << ": max rel error " << r.max_rel_error << '\n';
    }

    const JacobianBound lb = jacobian_lower_bound(g.N, g.lower_bound_samples, c.global.seed);
    const bool lb_pass = lb.accepted > 0 && lb.min_ratio > 0.0;
    all_pass = all_pass && lb_pass;
    log << "jacobian lower bound: min |det| / (xi^2 xi_4^2) = " << lb.min_ratio << '\n';

    json morse = json::array();
    auto rng = chunk_engine(c.global.seed, 7);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (MorseFamily f : {MorseFamily::refined_case_b, MorseFamily::d3_case_B}) {
        json points = json::array();
        for (const auto& sp : stationary_points(f, g.morse_p3)) {
            json entry = {{"expected", sp}};
            try {
                const MorseResult r = morse_check(f, {sp[0] + jitter(rng), sp[1] + jitter(rng)}, g.morse_p3);
                const bool same = std::hypot(r.point[0] - sp[0], r.point[1] - sp[1]) < 1e-8;
                const bool pass = same && r.gradient_norm < 1e-10 && std::abs(r.hessian_det) > 1e-6;
                all_pass = all_pass && pass;
                entry.update({{"point", r.point},
                              {"gradient_norm", r.gradient_norm},
                              {"hessian_det", r.hessian_det},
                              {"iterations", r.iterations},
                              {"pass", pass}});
            } catch (const ConvergenceError& e) {
                all_pass = false;
                entry.update({{"error", e.what()}, {"pass", false}});
            }
            points.push_back(entry);
        }
        morse.push_back({{"family", to_string(f)}, {"p3", g.morse_p3}, {"points", points}});
        log << "morse " << to_string(f) << ": " << points.size() << " stationary points checked\n";
    }

    write_json(ctx.out_dir / "geometry.json",
               {{"command", "verify-geometry"},
                {"N", g.N},
                {"fd_tolerance", g.fd_tolerance},
                {"jacobian", jac},
                {"lower_bound",
                 {{"min_ratio", lb.min_ratio}, {"accepted", lb.accepted}, {"drawn", lb.drawn}, {"pass", lb_pass}}},
                {"morse", morse},
                {"pass", all_pass}});
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    const SpectralField u0 = initial_field(c);
    const MultiplierParams p(c.multiplier.s, c.multiplier.N);
    const TrackerConfig tracker = c.tracker_config();

    std::ofstream traj = open_out(ctx.out_dir / "trajectory.csv");
    std::ofstream energy = open_out(ctx.out_dir / "energy.csv");
    write_trajectory_header(traj, u0.grid());
    write_energy_csv_header(energy);
    const double mass0 = u0.l2_squared();
    const double mean0 = u0.coeff(0).real();
    double mass_drift = 0.0;
    double mean_drift = 0.0;

    json summary = {{"command", "simulate"}, {"L", c.solver.L}, {"M", c.solver.M}, {"seed", c.global.seed}};
    try {
        const RunResult r = run(u0, c.solver_config(), c.tracker.stride,
                                {[&](double t, const SpectralField& u) {
                                    write_snapshot(traj, t, u);
                                    write_energy_csv_row(energy, energy_record(t, u, p, tracker));
                                    mass_drift = std::max(mass_drift, std::abs(u.l2_squared() - mass0) / mass0);
                                    mean_drift = std::max(mean_drift, std::abs(u.coeff(0).real() - mean0));
                                }});
        summary.update({{"t_final", r.t_final}, {"steps", r.steps}, {"dt_used", r.dt_used}, {"blow_up", false}});
    } catch (const BlowUpError& e) {
        summary.update({{"t_final", e.time()}, {"blow_up", true}, {"error", e.what()}});
        log << "blow-up: " << e.what() << '\n';
    }
    summary.update({{"l2_relative_drift", mass_drift}, {"mean_drift", mean_drift}});
    write_json(ctx.out_dir / "simulate.json", summary);
    log << "L2 relative drift " << mass_drift << '\n';
    return summary["blow_up"].get<bool>() ? kExitCheckFailed : kExitOk;
}

int cmd_sweep_energy(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    SweepInput in;
    in.N_list = c.multiplier.N_list;
    in.s = c.multiplier.s;
    in.tracker = c.tracker_config();
    in.solver = c.solver_config();
    in.seed = c.global.seed;
    in.config_hash = config_hash(c);
    const SweepReport r = almost_conservation_sweep(initial_field(c), in);

    for (std::size_t i = 0; i < r.N.size(); ++i) {
        std::ostringstream name;
        name << "energy_N" << r.N[i] << ".csv";
        std::ofstream csv = open_out(ctx.out_dir / name.str());
        write_energy_csv_header(csv);
        for (const EnergyRecord& e : r.series[i]) write_energy_csv_row(csv, e);
        log << "N=" << r.N[i] << "  sup|dE1|=" << r.supdE1[i] << "  sup|dE2|=" << r.supdE2[i] << '\n';
    }
    json report = to_json(r);
    report["command"] = "sweep-energy";
    write_json(ctx.out_dir / "sweep.json", report);
    if (r.fit_E1.degenerate || r.fit_E2.degenerate) {
        log << "slopes degenerate (need >= 3 N values, positive increments and s < 0)\n";
    } else {
        log << "slope E1 " << r.fit_E1.slope << "  slope E2 " << r.fit_E2.slope << '\n';
    }
    return r.partial ? kExitCheckFailed : kExitOk;
}

int cmd_crosscheck_derivative(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    const MultiplierParams p(c.multiplier.s, c.multiplier.N);
    Trajectory traj;
    run(initial_field(c), c.solver_config(), c.tracker.stride,
        {[&](double t, const SpectralField& u) { traj.push_back({t, u}); }});
    // The final state is always reported; drop it when it breaks the even spacing.
    if (traj.size() >= 3) {
        const double h = traj[1].t - traj[0].t;
        const double last = traj[traj.size() - 1].t - traj[traj.size() - 2].t;
        if (std::abs(last - h) > 1e-9 * h) traj.pop_back();
    }
    const CrosscheckResult r = derivative_crosscheck(traj, p, c.tracker_config());

    std::ofstream csv = open_out(ctx.out_dir / "crosscheck.csv");
    write_energy_csv_header(csv);
    for (const EnergyRecord& e : r.records) write_energy_csv_row(csv, e);
    constexpr double kTolerance = 1e-3;
    const bool pass = r.max_relative_mismatch < kTolerance;
    write_json(ctx.out_dir / "crosscheck.json", {{"command", "crosscheck-derivative"},
                                                {"N", c.multiplier.N},
                                                {"s", c.multiplier.s},
                                                {"samples", traj.size()},
                                                {"max_relative_mismatch", r.max_relative_mismatch},
                                                {"max_abs_mismatch", r.max_abs_mismatch},
                                                {"scale", r.scale},
                                                {"tolerance", kTolerance},
                                                {"pass", pass}});
    log << "max relative mismatch " << r.max_relative_mismatch << '\n';
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_plan(const RunContext& ctx) {
    const RunConfig& c = ctx.config;
    std::ostream& log = log_of(ctx);
    PlanInput in;
    in.s = c.plan.s;
    in.T = c.plan.T;
    in.u0_norm = c.plan.u0_norm;
    in.eps0 = c.plan.eps0;
    in.eps = c.global.epsilon;
    const Plan plan = make_plan(in);

    json report = {{"command", "plan"}, {"input", to_json(in)}, {"plan", to_json(plan)}};
    std::ostringstream table;
    table << std::setprecision(6);
    auto row = [&](const char* name, double v) { table << std::left << std::setw(12) << name << v << '\n'; };
    row("s", in.s);
    row("s_lower", plan.s_lower);
    row("T", in.T);
    row("rho", plan.rho);
    row("N", plan.N);
    row("lambda", plan.lambda);
    row("iterations", plan.iterations);
    row("exponent", plan.exponent);
    row("eta_min", plan.eta_min);
    if (c.plan.eta) {
        const GrowthBound b = growth_bound(in, *c.plan.eta);
        report["growth_bound"] = {{"eta", *c.plan.eta}, {"bound", b.bound}, {"margin", b.margin}};
        row("eta", *c.plan.eta);
        row("bound", b.bound);
    }
    log << table.str();
    write_json(ctx.out_dir / "plan.json", report);
    return kExitOk;
}

Command find_command(const std::string& name) {
    static const std::map<std::string, Command> table = {
        {"verify-pointwise", cmd_verify_pointwise},
        {"verify-sublevel", cmd_verify_sublevel},
        {"verify-geometry", cmd_verify_geometry},
        {"simulate", cmd_simulate},
        {"sweep-energy", cmd_sweep_energy},
        {"crosscheck-derivative", cmd_crosscheck_derivative},
        {"plan", cmd_plan},
    };
    const auto it = table.find(name);
    return it == table.end() ? nullptr : it->second;
}

int run_command(const std::string& name, const RunContext& ctx) {
    std::ostream& log = log_of(ctx);
    const Command cmd = find_command(name);
    if (!cmd) {
        log << "unknown command '" << name << "'\n";
        return kExitUsage;
    }
    fs::create_directories(ctx.out_dir);
    const std::string hash = config_hash(ctx.config);
    write_json(ctx.out_dir / "resolved_config.json", to_json(ctx.config));
    {
        std::ofstream os = open_out(ctx.out_dir / "config.sha256");
        os << hash << "  resolved_config\n";
    }

    const std::string started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    std::string error;
    try {
        code = cmd(ctx);
    } catch (const Error& e) {
        error = e.what();
        code = kExitUsage;
        log << "error: " << error << '\n';
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json meta = {{"command", name},
                 {"version", IMETHOD_VERSION},
                 {"config_sha256", hash},
                 {"started_utc", started},
                 {"finished_utc", utc_now()},
                 {"wall_seconds", wall},
                 {"exit_code", code}};
    if (!error.empty()) meta["error"] = error;
    write_json(ctx.out_dir / "run_metadata.json", meta);
    return code;
}

}  // namespace imethod::cli
