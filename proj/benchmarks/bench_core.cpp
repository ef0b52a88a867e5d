#include <benchmark/benchmark.h>

#include <cmath>

#include "imethod/energy.hpp"
#include "imethod/initial_data.hpp"
#include "imethod/multiplier.hpp"
#include "imethod/solver.hpp"
#include "imethod/sublevel.hpp"

using namespace imethod;

namespace {

SpectralField data(int M) {
    InitialDataSpec spec;
    spec.Hs_target = 0.5;
    spec.band_max = M / 2 - 1;
    return make_initial_data(spec, FrequencyGrid(2 * M_PI, M));
}

void BM_SolverStep(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const SpectralField u = data(M);
    SolverConfig c;
    c.dt = 1e-5;
    Stepper st(u.grid(), c);
    SpectralField v = u;
    for (auto _ : state) {
        v = st.advance(v, c.dt);
        benchmark::DoNotOptimize(v.half().data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SolverStep)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

void BM_QuinticCorrection(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const SpectralField u = data(M);
    const MultiplierParams p(-1.0 / 48.0, 8);
    TrackerConfig cfg;
    std::int64_t quads = 0;
    for (auto _ : state) {
        const QuinticSum r = lambda5(u, p, QuinticSymbol::correction, cfg);
        quads = r.quadruples;
        benchmark::DoNotOptimize(r.value);
    }
    state.counters["quadruples"] = static_cast<double>(quads);
    state.SetItemsProcessed(state.iterations() * quads);
}
BENCHMARK(BM_QuinticCorrection)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PointwiseSup(benchmark::State& state) {
    const MultiplierParams p(-1.0 / 48.0, 256);
    for (auto _ : state) benchmark::DoNotOptimize(pointwise_sup(p, state.range(0), 0.05, 1).sup);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PointwiseSup)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_SublevelIntegral(benchmark::State& state) {
    SublevelQuery q;
    q.weight = WeightKind::basic_smoothing;
    q.free_indices = {0, 1, 4};
    q.fixed = {0, 0, 11.0, -23.0, 0};
    set_default_box(q);
    q.K = 0.25;
    q.restriction = state.range(0) == 0 ? Restriction::sublevel : Restriction::quotient_tail;
    for (auto _ : state) benchmark::DoNotOptimize(sublevel_integral(q, 2000, 1).value);
    state.SetItemsProcessed(state.iterations() * 2000);
    state.SetLabel(state.range(0) == 0 ? "sublevel" : "quotient_tail");
}
BENCHMARK(BM_SublevelIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
