// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace flowgen {

/// Parameters of the synthetic pseudo-ECG source.
struct SynthSpec {
  std::size_t n_signals = 0;
  std::size_t channels = 0;
  std::size_t samples = 0;
  double sample_rate_hz = 0.0;
  std::size_t condition_dim = 0;
  std::uint64_t rng_seed = 0;
  double noise_std = 0.02;
  /// 1 = QRS only, 2 = QRS + T, 3 = P + QRS + T.
  int waves_per_beat = 3;
};

/// One Gaussian bump a_c * exp(-(t - center)^2 / (2 width^2)), with a
/// separate amplitude per channel.
struct GaussianBump {
  double center_s = 0.0;
  double width_s = 0.0;
  std::vector<double> amplitude;
};

/// Everything drawn for one synthetic signal before rendering.
struct SynthSignalParams {
  ConditionVector condition;
  double heart_rate_bpm = 0.0;
  std::vector<GaussianBump> bumps;
};

double gaussian_bump(double t, double center, double width) noexcept;

/// Draws per-signal parameters. Deterministic in spec.rng_seed.
std::vector<SynthSignalParams> synth_params(const SynthSpec& spec);

/// Sum of pseudo-beats per signal plus Gaussian noise, rounded to float
/// precision so that the dataset file round trip is exact.
///
/// Each active condition bit moves the draw ranges: bit j selects one of four
/// effects by j mod 4 (faster rate, inverted T wave, wide QRS, low QRS
/// voltage), and higher bits add a small extra rate offset so that every bit
/// is distinguishable. One or two bits are active per signal.
LabeledDataset synth_dataset(const SynthSpec& spec);

}  // namespace flowgen
