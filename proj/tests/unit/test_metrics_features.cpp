// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/error.hpp"
#include "flowgen/metrics/features.hpp"
#include "flowgen/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace flowgen;
using namespace flowgen::metrics;

namespace {

std::vector<double> sine(double freq, double rate, std::size_t n, double amp = 1.0, double offset = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = offset + amp * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  return x;
}

}  // namespace

TEST(Features, ConstantChannel) {
  const std::vector<double> x(300, 2.5);
  const auto f = channel_features(x, 100.0);
  EXPECT_DOUBLE_EQ(f[kMean], 2.5);
  EXPECT_EQ(f[kStd], 0.0);
  EXPECT_EQ(f[kSkewness], 0.0);
  EXPECT_EQ(f[kExcessKurtosis], 0.0);
  EXPECT_EQ(f[kMin], 2.5);
  EXPECT_EQ(f[kMax], 2.5);
  EXPECT_DOUBLE_EQ(f[kRms], 2.5);
  EXPECT_EQ(f[kZeroCrossingRate], 0.0);
  EXPECT_EQ(f[kPeakCount], 0.0);
  EXPECT_EQ(f[kDominantFrequency], 0.0);
  EXPECT_EQ(f[kSpectralCentroid], 0.0);
  EXPECT_EQ(f[kBandPowerLow] + f[kBandPowerMid] + f[kBandPowerHigh], 0.0);
}

TEST(Features, SineMoments) {
  // 10 full periods: mean 0, std 1/sqrt(2), skew 0, excess kurtosis -1.5.
  const auto x = sine(5.0, 100.0, 200, 1.0, 0.0);
  const auto f = channel_features(x, 100.0);
  EXPECT_NEAR(f[kMean], 0.0, 1e-12);
  EXPECT_NEAR(f[kStd], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f[kSkewness], 0.0, 1e-9);
  EXPECT_NEAR(f[kExcessKurtosis], -1.5, 1e-9);
  EXPECT_NEAR(f[kRms], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f[kMax], 1.0, 1e-12);
  EXPECT_NEAR(f[kMin], -1.0, 1e-12);
}

TEST(Features, SineSpectralContent) {
  const auto x = sine(5.0, 100.0, 1000, 1.0, 3.0);
  const auto f = channel_features(x, 100.0, {256, 0.5, Window::kHann});
  EXPECT_NEAR(f[kDominantFrequency], 5.0, 100.0 / 256.0);
  EXPECT_GT(f[kBandPowerMid], 0.95);
  EXPECT_NEAR(f[kBandPowerLow] + f[kBandPowerMid] + f[kBandPowerHigh], 1.0, 0.02);
  EXPECT_NEAR(f[kSpectralCentroid], 5.0, 0.5);
  EXPECT_NEAR(f[kMean], 3.0, 1e-12);
}

TEST(Features, LengthNormalizedFeaturesSurviveDuplication) {
  Rng rng(11);
  // 50 full periods so the duplicated signal is continuous at the seam.
  auto x = sine(5.0, 100.0, 1000);
  const auto h = sine(23.0, 100.0, 1000, 0.3);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += h[i] + 0.01 * standard_normal(rng);
  std::vector<double> xx = x;
  xx.insert(xx.end(), x.begin(), x.end());
  const auto a = channel_features(x, 100.0);
  const auto b = channel_features(xx, 100.0);
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    if (k == kPeakCount) {
      EXPECT_NEAR(b[k], 2.0 * a[k], 1.0);
      continue;
    }
    EXPECT_NEAR(b[k], a[k], std::max(0.01 * std::abs(a[k]), 1e-3)) << feature_name(k);
  }
}

TEST(Features, PeakCountAndZeroCrossings) {
  // 4 periods, 20 samples per period: 4 peaks, 7 sign changes over 79 pairs.
  std::vector<double> shifted(80);
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = std::sin(2.0 * std::numbers::pi * (i + 0.25) / 20.0);
  const auto f = channel_features(shifted, 100.0, {64, 0.5, Window::kHann});
  EXPECT_EQ(f[kPeakCount], 4.0);
  EXPECT_NEAR(f[kZeroCrossingRate], 7.0 / 79.0, 1e-12);
}

TEST(Features, ShortSignalRejected) {
  const std::vector<double> x(kMinFeatureSamples - 1, 1.0);
  EXPECT_THROW(channel_features(x, 100.0), ContractViolation);
  EXPECT_NO_THROW(channel_features(std::vector<double>(kMinFeatureSamples, 1.0), 100.0));
}

TEST(Features, WelchClampedToSignal) {
  const auto w = fit_welch({256, 0.5, Window::kHann}, 64);
  EXPECT_EQ(w.segment_len, 64u);
  EXPECT_EQ(fit_welch({32, 0.5, Window::kHann}, 64).segment_len, 32u);
}

TEST(Features, ExtractPerChannel) {
  SignalMatrix m(2, 128);
  const auto a = sine(5.0, 64.0, 128), b = sine(20.0, 64.0, 128);
  for (int i = 0; i < 128; ++i) {
    m(0, i) = a[i];
    m(1, i) = b[i];
  }
  const auto f = extract_features(MultiLeadSignal(m, 64.0));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(f[0][kDominantFrequency], 5.0, 0.5);
  EXPECT_NEAR(f[1][kDominantFrequency], 20.0, 0.5);
  EXPECT_GT(f[1][kBandPowerHigh], 0.9);
  EXPECT_EQ(feature_name(kMean), "mean");
}
