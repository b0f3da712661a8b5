// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/harness/config.hpp"
#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/nn/checkpoint.hpp"
#include "flowgen/ode_sampler.hpp"
#include "flowgen/signal.hpp"
#include "flowgen/synth.hpp"
#include "flowgen/training.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace flowgen::harness {

/// Trains one generator from a fixed initialization. For kDiffusion the
/// checkpoint carries the schedule.
struct TrainedModel {
  nn::Checkpoint checkpoint;
  std::vector<LossRecord> trace;
};

TrainedModel train_model(nn::MethodTag method, const LabeledDataset& data, const nn::ModelSpec& spec,
                         std::uint64_t init_seed, const TrainOptions& opts, const ScheduleConfig& schedule);

/// Generates one signal per condition with `nfe` network evaluations each.
/// Flow checkpoints integrate the ODE; diffusion checkpoints run the strided
/// ancestral sampler (the integrator is ignored).
std::vector<MultiLeadSignal> generate(const nn::Checkpoint& ckpt, const std::vector<ConditionVector>& conditions,
                                      std::size_t nfe, std::uint64_t seed, Integrator integrator = Integrator::kEuler);

void cmd_synth_data(const SynthSpec& spec, const std::filesystem::path& out);

struct TrainCommand {
  nn::MethodTag method = nn::MethodTag::kFlowMatching;
  std::filesystem::path data;
  std::filesystem::path out;
  std::optional<std::filesystem::path> trace_csv;
  std::vector<std::size_t> hidden_sizes = {256, 256};
  std::size_t time_embed_dim = 16;
  std::uint64_t init_seed = 0;
  TrainOptions options;
  ScheduleConfig schedule;
};

nn::Checkpoint cmd_train(const TrainCommand& cmd);

struct SampleCommand {
  std::filesystem::path checkpoint;
  nn::MethodTag method = nn::MethodTag::kFlowMatching;
  std::size_t nfe = 10;
  std::size_t n = 1;
  ConditionVector condition;
  std::uint64_t seed = 0;
  Integrator integrator = Integrator::kEuler;
  std::filesystem::path out;
};

/// Errors when the checkpoint's method tag differs from cmd.method or the
/// condition width differs from the checkpoint's.
LabeledDataset cmd_sample(const SampleCommand& cmd);

/// Loads both datasets, checks that their signal shapes agree and writes the
/// report JSON to `json_out` when given.
metrics::MetricReport cmd_evaluate(const std::filesystem::path& real, const std::filesystem::path& gen,
                                   const metrics::MetricOptions& opts,
                                   const std::optional<std::filesystem::path>& json_out = std::nullopt);

LabeledDataset cmd_import_csv(const std::vector<std::filesystem::path>& files, double sample_rate_hz,
                              const ConditionVector& condition, const std::filesystem::path& out);

}  // namespace flowgen::harness
