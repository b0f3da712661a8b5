// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/synth.hpp"

#include "flowgen/error.hpp"
#include "flowgen/rng.hpp"

#include <cmath>
#include <numbers>

namespace flowgen {
namespace {

void validate(const SynthSpec& spec) {
  require(spec.n_signals > 0, "synth_dataset: n_signals must be positive");
  require(spec.channels > 0, "synth_dataset: channels must be positive");
  require(spec.samples >= 2, "synth_dataset: samples must be at least 2");
  require(std::isfinite(spec.sample_rate_hz) && spec.sample_rate_hz > 0.0,
          "synth_dataset: sample_rate_hz must be positive");
  require(spec.condition_dim > 0, "synth_dataset: condition_dim must be positive");
  require(std::isfinite(spec.noise_std) && spec.noise_std >= 0.0,
          "synth_dataset: noise_std must be non-negative");
  require(spec.waves_per_beat >= 1 && spec.waves_per_beat <= 3,
          "synth_dataset: waves_per_beat must be 1, 2 or 3");
}

ConditionVector draw_condition(std::size_t dim, Rng& rng) {
  std::vector<std::uint8_t> bits(dim, 0);
  const std::size_t active = (dim >= 2 && uniform01(rng) < 0.5) ? 2 : 1;
  std::size_t placed = 0;
  while (placed < active) {
    const std::size_t j = uniform_index(rng, dim);
    if (bits[j] == 0) {
      bits[j] = 1;
      ++placed;
    }
  }
  return ConditionVector(std::move(bits));
}

struct LeadGains {
  double p, qrs, t;
};

LeadGains lead_gains(std::size_t channel, std::size_t channels) {
  const double frac = channels > 1 ? static_cast<double>(channel) / static_cast<double>(channels - 1) : 0.0;
  const double theta = frac * 2.0 * std::numbers::pi / 3.0;
  return {0.5 + 0.5 * std::cos(theta), std::cos(theta) + 0.2, 0.8 * std::cos(theta / 2.0)};
}

}  // namespace

double gaussian_bump(double t, double center, double width) noexcept {
  const double z = (t - center) / width;
  return std::exp(-0.5 * z * z);
}

std::vector<SynthSignalParams> synth_params(const SynthSpec& spec) {
  validate(spec);
  Rng rng(derive_seed(spec.rng_seed, "synth.params"));
  const double duration = static_cast<double>(spec.samples) / spec.sample_rate_hz;

  std::vector<LeadGains> gains;
  for (std::size_t c = 0; c < spec.channels; ++c) gains.push_back(lead_gains(c, spec.channels));

  std::vector<SynthSignalParams> out;
  out.reserve(spec.n_signals);
  for (std::size_t i = 0; i < spec.n_signals; ++i) {
    SynthSignalParams p;
    p.condition = draw_condition(spec.condition_dim, rng);

    double hr_lo = 55.0, hr_hi = 75.0;
    double qrs_amp_scale = 1.0, qrs_width_scale = 1.0, t_sign = 1.0;
    for (std::size_t j = 0; j < spec.condition_dim; ++j) {
      if (p.condition[j] == 0) continue;
      const double extra = 5.0 * static_cast<double>(j / 4);
      hr_lo += extra;
      hr_hi += extra;
      switch (j % 4) {
        case 0: hr_lo += 30.0; hr_hi += 30.0; break;
        case 1: t_sign = -1.0; break;
        case 2: qrs_width_scale = 1.8; break;
        default: qrs_amp_scale = 0.5; break;
      }
    }

    p.heart_rate_bpm = uniform(rng, hr_lo, hr_hi);
    const double rr = 60.0 / p.heart_rate_bpm;
    const double phase = uniform(rng, 0.0, rr);
    const double qrs_amp = qrs_amp_scale * uniform(rng, 0.8, 1.2);
    const double qrs_width = qrs_width_scale * uniform(rng, 0.025, 0.04);
    const double t_amp = t_sign * uniform(rng, 0.2, 0.35);
    const double t_width = uniform(rng, 0.05, 0.08);
    const double p_amp = uniform(rng, 0.1, 0.2);
    const double p_width = uniform(rng, 0.02, 0.035);
    const double rr_scale = std::sqrt(rr);

    auto add_bump = [&](double center, double width, double amp, double LeadGains::*gain) {
      GaussianBump b;
      b.center_s = center;
      b.width_s = width;
      b.amplitude.reserve(spec.channels);
      for (const auto& g : gains) b.amplitude.push_back(amp * (g.*gain));
      p.bumps.push_back(std::move(b));
    };

    for (double r = phase - rr; r < duration + rr; r += rr) {
      if (spec.waves_per_beat >= 3) add_bump(r - 0.16 * rr_scale, p_width, p_amp, &LeadGains::p);
      add_bump(r, qrs_width, qrs_amp, &LeadGains::qrs);
      if (spec.waves_per_beat >= 2) add_bump(r + 0.3 * rr_scale, t_width, t_amp, &LeadGains::t);
    }
    out.push_back(std::move(p));
  }
  return out;
}

LabeledDataset synth_dataset(const SynthSpec& spec) {
  const auto params = synth_params(spec);
  Rng noise_rng(derive_seed(spec.rng_seed, "synth.noise"));
  // The file format stores the rate as f32.
  const double stored_rate = static_cast<double>(static_cast<float>(spec.sample_rate_hz));

  std::vector<MultiLeadSignal> signals;
  std::vector<ConditionVector> conditions;
  signals.reserve(params.size());
  conditions.reserve(params.size());
  for (const auto& p : params) {
    SignalMatrix m(spec.channels, spec.samples);
    for (std::size_t c = 0; c < spec.channels; ++c) {
      for (std::size_t n = 0; n < spec.samples; ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate_hz;
        double v = 0.0;
        for (const auto& b : p.bumps) v += b.amplitude[c] * gaussian_bump(t, b.center_s, b.width_s);
        if (spec.noise_std > 0.0) v += spec.noise_std * standard_normal(noise_rng);
        m(c, n) = static_cast<double>(static_cast<float>(v));
      }
    }
    signals.emplace_back(std::move(m), stored_rate);
    conditions.push_back(p.condition);
  }
  return LabeledDataset(std::move(signals), std::move(conditions));
}

}  // namespace flowgen
