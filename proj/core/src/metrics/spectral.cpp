// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/error.hpp"
#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/metrics/features.hpp"
#include "flowgen/metrics/wasserstein.hpp"

namespace flowgen::metrics {

double spectral_score(double mean_distance) {
  require(mean_distance >= 0.0, "spectral_score: distance must be non-negative");
  return 1.0 / (1.0 + mean_distance);
}

ChannelMetric spectral_similarity(const SignalSet& real, const SignalSet& gen, const WelchOptions& welch) {
  require(!real.empty() && !gen.empty(), "spectral_similarity: sets must be nonempty");
  const SignalShape shape = real.front().shape();
  for (const auto* set : {&real, &gen}) {
    for (const auto& s : *set) {
      require(s.channels() == shape.channels && s.samples() == shape.samples,
              "spectral_similarity: signals differ in shape");
    }
  }
  auto summaries = [&](const SignalSet& set, std::size_t channel) {
    std::vector<SpectralFeatures> out;
    out.reserve(set.size());
    for (const auto& s : set) {
      out.push_back(psd_summary(welch_psd(s.channel(channel), s.sample_rate_hz(),
                                          fit_welch(welch, s.samples()))));
    }
    return out;
  };
  std::vector<double> scores(shape.channels);
  for (std::size_t c = 0; c < shape.channels; ++c) {
    const auto a = summaries(real, c);
    const auto b = summaries(gen, c);
    double total = 0.0;
    std::vector<double> col_a(a.size()), col_b(b.size());
    for (std::size_t d = 0; d < kSpectralFeatureCount; ++d) {
      for (std::size_t i = 0; i < a.size(); ++i) col_a[i] = a[i][d];
      for (std::size_t i = 0; i < b.size(); ++i) col_b[i] = b[i][d];
      total += wasserstein1_1d(col_a, col_b);
    }
    scores[c] = spectral_score(total / static_cast<double>(kSpectralFeatureCount));
  }
  return ChannelMetric::from_channels(std::move(scores));
}

}  // namespace flowgen::metrics
