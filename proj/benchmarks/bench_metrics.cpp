// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/dtw.hpp"
#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/metrics/mmd.hpp"
#include "flowgen/metrics/wasserstein.hpp"
#include "flowgen/metrics/welch.hpp"
#include "flowgen/rng.hpp"
#include "flowgen/synth.hpp"

#include <benchmark/benchmark.h>

using namespace flowgen;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = standard_normal(rng);
  return v;
}

void BM_Dtw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 1), b = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::dtw_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_Wasserstein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 3), b = noise(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::wasserstein1_1d(a, b));
}
BENCHMARK(BM_Wasserstein)->Range(128, 16384);

void BM_Mmd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  std::vector<Eigen::VectorXd> x, y;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(Eigen::VectorXd::NullaryExpr(64, [&] { return standard_normal(rng); }));
    y.push_back(Eigen::VectorXd::NullaryExpr(64, [&] { return standard_normal(rng) + 0.1; }));
  }
  for (auto _ : state) benchmark::DoNotOptimize(metrics::mmd2(x, y));
}
BENCHMARK(BM_Mmd)->Arg(32)->Arg(128)->Arg(256);

void BM_Welch(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::welch_psd(x, 500.0));
}
BENCHMARK(BM_Welch)->Arg(1000)->Arg(5000);

void BM_EvaluateAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto real = synth_dataset({n, 2, 64, 32.0, 4, 7}).signals();
  const auto gen = synth_dataset({n, 2, 64, 32.0, 4, 8}).signals();
  for (auto _ : state) benchmark::DoNotOptimize(metrics::evaluate_all(real, gen));
}
BENCHMARK(BM_EvaluateAll)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
