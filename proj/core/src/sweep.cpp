#include "imethod/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "imethod/error.hpp"

namespace imethod {

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

SweepReport almost_conservation_sweep(const SpectralField& u0, const SweepInput& in) {
    if (in.N_list.empty()) throw DomainError("almost_conservation_sweep: N_list is empty");
    in.tracker.validate();
    in.solver.validate();

    Trajectory traj;
    SweepReport rep;
    rep.L = u0.grid().length();
    rep.M = u0.grid().modes();
    rep.seed = in.seed;
    rep.config_hash = in.config_hash;
    try {
        run(u0, in.solver, in.tracker.stride,
            {[&](double t, const SpectralField& u) { traj.push_back({t, u}); }});
        rep.t_reached = in.solver.T_end;
    } catch (const BlowUpError&) {
        rep.partial = true;
        rep.t_reached = traj.empty() ? 0.0 : traj.back().t;
    }

    for (double N : in.N_list) {
        const MultiplierParams p(in.s, N);
        std::vector<EnergyRecord> series;
        series.reserve(traj.size());
        double d1 = 0.0;
        double d2 = 0.0;
        for (const Snapshot& snap : traj) {
            series.push_back(energy_record(snap.t, snap.u, p, in.tracker));
            d1 = std::max(d1, std::abs(series.back().E1 - series.front().E1));
            d2 = std::max(d2, std::abs(series.back().E2 - series.front().E2));
        }
        rep.N.push_back(N);
        rep.K.push_back(in.tracker.resolved_K(p));
        rep.supdE1.push_back(d1);
        rep.supdE2.push_back(d2);
        rep.series.push_back(std::move(series));
    }
    // With s = 0 both energies are the conserved mass; the increments are rounding
    // noise and a slope would be meaningless.
    if (in.s != 0.0) {
        rep.fit_E1 = fit_loglog(rep.N, rep.supdE1);
        rep.fit_E2 = fit_loglog(rep.N, rep.supdE2);
    }
    return rep;
}

nlohmann::json to_json(const LogLogFit& f) {
    return {{"slope", number_or_null(f.slope)},
            {"intercept", number_or_null(f.intercept)},
            {"stderr", number_or_null(f.slope_stderr)},
            {"ci", number_or_null(f.slope_ci)},
            {"degenerate", f.degenerate}};
}

nlohmann::json to_json(const SweepReport& r) {
    return {{"N", r.N},
            {"K", r.K},
            {"supdE1", r.supdE1},
            {"supdE2", r.supdE2},
            {"slopes", {{"E1", number_or_null(r.fit_E1.slope)}, {"E2", number_or_null(r.fit_E2.slope)}}},
            {"ci", {{"E1", number_or_null(r.fit_E1.slope_ci)}, {"E2", number_or_null(r.fit_E2.slope_ci)}}},
            {"degenerate", {{"E1", r.fit_E1.degenerate}, {"E2", r.fit_E2.degenerate}}},
            {"partial", r.partial},
            {"t_reached", r.t_reached},
            {"L", r.L},
            {"M", r.M},
            {"seeds", {r.seed}},
            {"config_hash", r.config_hash}};
}

}  // namespace imethod
