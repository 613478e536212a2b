// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot path of the Monte Carlo harness.

#include <benchmark/benchmark.h>

#include <random>

#include "fracsim/harness.hpp"
#include "fracsim/modem.hpp"
#include "fracsim/transmux.hpp"

using namespace fracsim;

namespace {

FracConfig bench_config() {
    FracConfig cfg;
    cfg.n = 256;
    cfg.nf = 16;
    cfg.guard = 1;
    cfg.m_half = 28;
    return cfg;
}

OqamGrid random_grid(const FracConfig& cfg) {
    std::mt19937_64 eng(17);
    OqamGrid g{RealGrid(cfg.n, cfg.m_half), cfg.eps_hz};
    for (auto& v : g.symbols.data()) v = (eng() & 1) ? 1.0 : -1.0;
    return g;
}

void BM_Synthesize(benchmark::State& state) {
    const auto cfg = bench_config();
    const auto link = make_link_context(cfg);
    const auto grid = random_grid(cfg);
    for (auto _ : state) {
        auto sig = synthesize(grid, link.grids.zeta_a, link.filter);
        benchmark::DoNotOptimize(sig.samples.data());
    }
}
BENCHMARK(BM_Synthesize);

void BM_Analyze(benchmark::State& state) {
    const auto cfg = bench_config();
    const auto link = make_link_context(cfg);
    const auto sig = synthesize(random_grid(cfg), link.grids.zeta_a, link.filter);
    for (auto _ : state) {
        auto r = analyze(sig, 0.2 * cfg.eps_hz, link.grids.zeta_a, link.filter, cfg);
        benchmark::DoNotOptimize(r.data().data());
    }
}
BENCHMARK(BM_Analyze);

void BM_RunTrial(benchmark::State& state) {
    const auto cfg = bench_config();
    const auto link = make_link_context(cfg);
    const auto profile = load_profile("itu_pa");
    uint64_t t = 0;
    for (auto _ : state) {
        Rng rng(derive_seed(1, 0, t++));
        auto counts = run_trial(Scheme::frac, profile, 15.0, 0.3, link, rng);
        benchmark::DoNotOptimize(counts);
    }
}
BENCHMARK(BM_RunTrial);

void BM_TransmuxTable(benchmark::State& state) {
    const auto p = design_phydyas(256, 4);
    for (auto _ : state) {
        TransmuxTable tab(p, 0.3);
        benchmark::DoNotOptimize(tab.integral(1, 1));
    }
}
BENCHMARK(BM_TransmuxTable);

}  // namespace

BENCHMARK_MAIN();
