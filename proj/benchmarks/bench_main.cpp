// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include <benchmark/benchmark.h>

#include "lorasim/channel.hpp"
#include "lorasim/engine.hpp"
#include "lorasim/geometry.hpp"
#include "lorasim/rng.hpp"

namespace ls = lorasim;

static void BM_philox_stream(benchmark::State& state) {
  ls::CounterStream rng(42, 0, 0, ls::StreamLane::geometry);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_philox_stream);

static void BM_marcum_q1(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ls::marcum_q1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * t)));
    t = t < 3.0 ? t + 0.01 : 0.1;
  }
}
BENCHMARK(BM_marcum_q1)->Arg(0)->Arg(4)->Arg(10)->Arg(100);

static void BM_sample_ppp(benchmark::State& state) {
  const double intensity = static_cast<double>(state.range(0)) / 1000.0;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    ls::CounterStream rng(7, 0, trial++, ls::StreamLane::geometry);
    benchmark::DoNotOptimize(ls::sample_ppp(intensity, 20.0, rng));
  }
}
BENCHMARK(BM_sample_ppp)->Arg(5)->Arg(5000);

static void BM_run_trial(benchmark::State& state) {
  ls::SimConfig config;
  config.gateway_mode = state.range(0) ? ls::GatewayMode::any_gateway : ls::GatewayMode::nearest;
  config.interference_mode =
      state.range(1) ? ls::InterferenceMode::inter_sf : ls::InterferenceMode::co_sf;
  const ls::SfBoundaries boundaries = config.boundaries();
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ls::run_trial(config, boundaries, 6.0, 0, trial++));
  }
}
BENCHMARK(BM_run_trial)->Args({0, 0})->Args({1, 0})->Args({1, 1});

BENCHMARK_MAIN();
