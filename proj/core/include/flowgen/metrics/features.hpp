// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/metrics/welch.hpp"
#include "flowgen/signal.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace flowgen::metrics {

/// Per-channel summary features, in this order.
enum FeatureIndex : std::size_t {
  kMean = 0,
  kStd,
  kSkewness,
  kExcessKurtosis,
  kMin,
  kMax,
  kRms,
  kZeroCrossingRate,
  kPeakCount,
  kDominantFrequency,
  kSpectralCentroid,
  kBandPowerLow,   // 0-4 Hz
  kBandPowerMid,   // 4-15 Hz
  kBandPowerHigh,  // 15-40 Hz
  kFeatureCount,
};

using FeatureVector = std::array<double, kFeatureCount>;

/// Spectral subset used by the spectral similarity score:
/// dominant frequency, centroid and the three band-power fractions.
inline constexpr std::size_t kSpectralFeatureCount = 5;
using SpectralFeatures = std::array<double, kSpectralFeatureCount>;

std::string_view feature_name(std::size_t index);

inline constexpr std::size_t kMinFeatureSamples = 8;

/// Dominant frequency (first argmax), power-weighted centroid, and the
/// fractions of total power in [0,4), [4,15), [15,40) Hz. All zero for a
/// zero-power spectrum.
SpectralFeatures psd_summary(const Psd& psd);

/// Welch options clamped to the signal: segment_len = min(opts.segment_len, samples).
WelchOptions fit_welch(const WelchOptions& opts, std::size_t samples);

/// Features of one channel. Skewness and kurtosis are 0 for a zero-variance
/// channel; peak count counts strict local maxima above mean + 1 std;
/// zero-crossing rate is sign changes of the centered signal per adjacent pair.
FeatureVector channel_features(std::span<const double> x, double sample_rate_hz,
                               const WelchOptions& welch = {});

std::vector<FeatureVector> extract_features(const MultiLeadSignal& s, const WelchOptions& welch = {});

}  // namespace flowgen::metrics
