// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/diffusion.hpp"
#include "flowgen/nn/mlp.hpp"
#include "flowgen/ode_sampler.hpp"
#include "flowgen/rng.hpp"

#include <benchmark/benchmark.h>

using namespace flowgen;

namespace {

nn::ModelSpec toy_spec() {
  nn::ModelSpec s;
  s.shape = {2, 64, 32.0};
  s.condition_dim = 4;
  return s;
}

nn::MseBatch random_batch(const nn::ModelSpec& spec, std::size_t items) {
  Rng rng(1);
  nn::MseBatch b;
  b.inputs = Eigen::MatrixXd(spec.signal_dim(), items);
  b.targets = Eigen::MatrixXd(spec.signal_dim(), items);
  for (Eigen::Index i = 0; i < b.inputs.size(); ++i) {
    b.inputs.data()[i] = standard_normal(rng);
    b.targets.data()[i] = standard_normal(rng);
  }
  b.conditions.assign(items, ConditionVector::parse("0101"));
  for (std::size_t i = 0; i < items; ++i) b.times.push_back(uniform01(rng));
  return b;
}

void BM_Forward(benchmark::State& state) {
  const nn::VelocityModel model(toy_spec(), 1, nn::InitMode::kRandomAll);
  const auto b = random_batch(model.spec(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(model.forward_batch(b.inputs, b.conditions, b.times));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(6)->Arg(64);

void BM_Backward(benchmark::State& state) {
  const nn::VelocityModel model(toy_spec(), 1, nn::InitMode::kRandomAll);
  const auto b = random_batch(model.spec(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nn::backward(model, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Backward)->Arg(6)->Arg(32);

void BM_FlowSample(benchmark::State& state) {
  const nn::VelocityModel model(toy_spec(), 1, nn::InitMode::kRandomAll);
  const auto nfe = static_cast<std::size_t>(state.range(0));
  const auto c = ConditionVector::parse("0101");
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_flat(model, initial_noise(model.dim(), 3), c, nfe, Integrator::kEuler));
  }
}
BENCHMARK(BM_FlowSample)->Arg(2)->Arg(10)->Arg(200);

void BM_DiffusionSample(benchmark::State& state) {
  const nn::VelocityModel model(toy_spec(), 1, nn::InitMode::kRandomAll);
  const auto sched = make_schedule();
  const auto nfe = static_cast<std::size_t>(state.range(0));
  const auto c = ConditionVector::parse("0101");
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ancestral_sample_flat(model, initial_noise(model.dim(), 3), c, sched, nfe, rng));
  }
}
BENCHMARK(BM_DiffusionSample)->Arg(2)->Arg(10)->Arg(200);

}  // namespace
