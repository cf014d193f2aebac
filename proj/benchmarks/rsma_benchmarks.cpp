#include <array>
#include <vector>

#include <benchmark/benchmark.h>

#include "rsma/allocation.hpp"
#include "rsma/bound.hpp"
#include "rsma/channel.hpp"
#include "rsma/random.hpp"
#include "rsma/special_functions.hpp"
#include "rsma/transceiver.hpp"

namespace {

// e^x sum_{m=1}^{N} E_m(x) over the orders the bound reaches (N = round(d_hat K)).
void BM_ScaledExpIntegralSum(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsma::scaled_exp_integral_sum(order, x));
        x = x < 40.0 ? x * 1.5 : 0.01;
    }
}
BENCHMARK(BM_ScaledExpIntegralSum)->Arg(2)->Arg(16)->Arg(64)->Arg(200);

void BM_ZeroForcingPrecoders(benchmark::State& state) {
    const int n_t = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    rsma::RandomStream rng(1, 0);
    const auto channel = rsma::draw_channel_pair(n_t, k, 0.5, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rsma::zf_precoders(channel.csit()));
}
BENCHMARK(BM_ZeroForcingPrecoders)->Args({4, 4})->Args({8, 4})->Args({32, 8})->Args({64, 16});

void BM_ClosedFormAllocation(benchmark::State& state) {
    double p = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rsma::t_opt_closed_form(p, 8, 32, 0.5));
        p = p < 1e5 ? p * 1.1 : 10.0;
    }
}
BENCHMARK(BM_ClosedFormAllocation);

void BM_ExhaustiveBoundAllocation(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rsma::t_opt_exhaustive(1000.0, 8, 32, 0.5, rsma::Objective::lower_bound, 0.001));
}
BENCHMARK(BM_ExhaustiveBoundAllocation)->Unit(benchmark::kMillisecond);

// Monte Carlo trials per second for one t, single thread.
void BM_MonteCarloSumRate(benchmark::State& state) {
    rsma::ScenarioConfig cfg;
    cfg.num_antennas = static_cast<int>(state.range(0));
    cfg.num_users = static_cast<int>(state.range(1));
    cfg.snr_db = 20.0;
    cfg.epsilon_override = 0.5;
    cfg.trials = 1024;
    cfg.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(rsma::monte_carlo_sum_rate(cfg, 0.5, {1}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_MonteCarloSumRate)->Args({4, 4})->Args({32, 8})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
