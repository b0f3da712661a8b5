// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/features.hpp"

#include "flowgen/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace flowgen::metrics {

std::string_view feature_name(std::size_t index) {
  static constexpr std::array<std::string_view, kFeatureCount> names = {
      "mean", "std", "skewness", "excess_kurtosis", "min", "max", "rms", "zero_crossing_rate",
      "peak_count", "dominant_frequency_hz", "spectral_centroid_hz", "band_power_0_4hz",
      "band_power_4_15hz", "band_power_15_40hz"};
  return names.at(index);
}

SpectralFeatures psd_summary(const Psd& psd) {
  double total = 0.0, weighted = 0.0, low = 0.0, mid = 0.0, high = 0.0;
  std::size_t argmax = 0;
  for (std::size_t k = 0; k < psd.power.size(); ++k) {
    const double p = psd.power[k];
    const double f = psd.freqs_hz[k];
    total += p;
    weighted += f * p;
    if (p > psd.power[argmax]) argmax = k;
    if (f < 4.0) {
      low += p;
    } else if (f < 15.0) {
      mid += p;
    } else if (f < 40.0) {
      high += p;
    }
  }
  if (total <= 0.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
  return {psd.freqs_hz[argmax], weighted / total, low / total, mid / total, high / total};
}

WelchOptions fit_welch(const WelchOptions& opts, std::size_t samples) {
  WelchOptions w = opts;
  w.segment_len = std::min(opts.segment_len, samples);
  return w;
}

FeatureVector channel_features(std::span<const double> x, double sample_rate_hz,
                               const WelchOptions& welch) {
  require(x.size() >= kMinFeatureSamples,
          fmt::format("extract_features: need at least {} samples, got {}", kMinFeatureSamples,
                      x.size()));
  const double n = static_cast<double>(x.size());
  FeatureVector f{};

  double sum = 0.0, sum_sq = 0.0;
  double lo = x[0], hi = x[0];
  for (double v : x) {
    sum += v;
    sum_sq += v * v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double std = std::sqrt(m2);

  f[kMean] = mean;
  f[kStd] = std;
  if (m2 > 1e-24) {
    f[kSkewness] = m3 / (m2 * std);
    f[kExcessKurtosis] = m4 / (m2 * m2) - 3.0;
  }
  f[kMin] = lo;
  f[kMax] = hi;
  f[kRms] = std::sqrt(sum_sq / n);

  std::size_t crossings = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if ((x[i] - mean) * (x[i + 1] - mean) < 0.0) ++crossings;
  }
  f[kZeroCrossingRate] = static_cast<double>(crossings) / (n - 1.0);

  const double threshold = mean + std;
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (x[i] > x[i - 1] && x[i] > x[i + 1] && x[i] > threshold) ++peaks;
  }
  f[kPeakCount] = static_cast<double>(peaks);

  const auto spectral = psd_summary(welch_psd(x, sample_rate_hz, fit_welch(welch, x.size())));
  std::copy(spectral.begin(), spectral.end(), f.begin() + kDominantFrequency);
  return f;
}

std::vector<FeatureVector> extract_features(const MultiLeadSignal& s, const WelchOptions& welch) {
  std::vector<FeatureVector> out;
  out.reserve(s.channels());
  for (std::size_t c = 0; c < s.channels(); ++c) {
    out.push_back(channel_features(s.channel(c), s.sample_rate_hz(), welch));
  }
  return out;
}

}  // namespace flowgen::metrics
