#include "qtweezer/config.hpp"
#include "qtweezer/model.hpp"
#include "qtweezer/oracle.hpp"
#include "qtweezer/sweep.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace qtweezer;

namespace {

Config baseline(std::vector<std::string> overrides = {}) {
    return load_config_file(std::string(QTWEEZER_SOURCE_DIR) + "/configs/baseline.conf", overrides);
}

const Setup& baseline_setup() {
    static const Setup s = prepare(baseline());
    return s;
}

} // namespace

// Profile, basis and every overlap integral for j <= j_max.
static void BM_prepare(benchmark::State& state) {
    const Config c = baseline({"j_max=" + std::to_string(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(prepare(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_prepare)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond)->Complexity();

// One fidelity evaluation on a prepared setup; this is the inner loop of every sweep.
static void BM_evaluate(benchmark::State& state) {
    const Setup& s = baseline_setup();
    const DriveState d = configured_drive(s);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(s, d));
}
BENCHMARK(BM_evaluate)->Unit(benchmark::kMicrosecond);

static void BM_oracle_exact(benchmark::State& state) {
    const Setup& s = baseline_setup();
    DriveState d = configured_drive(s);
    d.g_ab_over_g_b = 0.0;
    const Evaluation e = evaluate(s, d);
    std::vector<ModeIndex> sel;
    for (int j = 1; j <= state.range(0); ++j) sel.push_back({j, 0, 0});
    OracleConfig c;
    c.modes = oracle_modes(e.couplings.records, s.basis, sel, true);
    c.n_max = static_cast<int>(state.range(1));
    c.omega_eff = d.omega_eff;
    c.theta = d.theta;
    c.lambda = 0.1;
    for (auto _ : state) benchmark::DoNotOptimize(oracle_exact(c));
}
BENCHMARK(BM_oracle_exact)->Args({1, 15})->Args({2, 6})->Args({2, 15})->Args({3, 6})->Unit(benchmark::kMillisecond);

static void BM_gab_sweep(benchmark::State& state) {
    SweepRequest r;
    r.base = baseline();
    r.threads = static_cast<unsigned>(state.range(0));
    for (int i = 0; i < 41; ++i) r.grid.push_back(0.05 * i);
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(r));
}
BENCHMARK(BM_gab_sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_optimize(benchmark::State& state) {
    const Config c = baseline();
    for (auto _ : state) benchmark::DoNotOptimize(optimize_gab(c));
}
BENCHMARK(BM_optimize)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
