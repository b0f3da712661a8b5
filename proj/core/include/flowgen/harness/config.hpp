// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/nn/mlp.hpp"
#include "flowgen/ode_sampler.hpp"
#include "flowgen/synth.hpp"
#include "flowgen/training.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace flowgen::harness {

inline constexpr int kConfigVersion = 1;

struct DatasetConfig {
  std::size_t n_signals = 256;
  std::size_t eval_signals = 128;
  std::size_t channels = 2;
  std::size_t samples = 64;
  double sample_rate_hz = 32.0;
  std::size_t condition_dim = 4;
  double noise_std = 0.02;
  int waves_per_beat = 3;
};

struct ModelConfig {
  std::vector<std::size_t> hidden_sizes = {256, 256};
  std::size_t time_embed_dim = 16;
};

struct TrainingConfig {
  std::size_t steps = 5000;
  std::size_t batch_size = 6;
  double learning_rate = 2e-4;
  std::size_t log_every = 50;
};

struct ScheduleConfig {
  std::size_t steps = 200;
  double beta_min = 1e-4;
  double beta_max = 0.02;
};

/// A full experiment. Every random draw derives from master_seed; see
/// experiment_seeds().
struct ExperimentConfig {
  int version = kConfigVersion;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "flowgen_out";
  DatasetConfig dataset;
  ModelConfig model;
  TrainingConfig training;
  ScheduleConfig schedule;
  std::vector<std::size_t> nfe_list = {2, 5, 10, 25, 50, 100, 200};
  Integrator integrator = Integrator::kEuler;
  metrics::MetricOptions metrics;
};

/// Seeds fanned out from the master seed: child = derive_seed(master, name).
struct ExperimentSeeds {
  std::uint64_t train_data;
  std::uint64_t eval_data;
  std::uint64_t model_init;
  std::uint64_t fm_training;
  std::uint64_t ddpm_training;
  std::uint64_t sampling;
  std::uint64_t metrics;
};

ExperimentSeeds experiment_seeds(std::uint64_t master_seed);

/// Parses and validates. Unknown keys, wrong types and out-of-range values are
/// collected and reported together in one ValidationError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

SynthSpec train_spec(const ExperimentConfig& cfg);
SynthSpec eval_spec(const ExperimentConfig& cfg);
nn::ModelSpec model_spec(const ExperimentConfig& cfg);
TrainOptions train_options(const ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace flowgen::harness
