// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/metrics/dtw.hpp"
#include "flowgen/metrics/mmd.hpp"
#include "flowgen/metrics/welch.hpp"
#include "flowgen/signal.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flowgen::metrics {

using SignalSet = std::vector<MultiLeadSignal>;

enum class DtwPairing {
  /// Real item k against generated item k. When the sets differ in size the
  /// larger one is subsampled (seeded, order kept) down to the smaller size.
  kIndexAligned,
  /// Each generated item against its closest real item.
  kBestMatch,
};

std::string to_string(DtwPairing p);
DtwPairing parse_pairing(const std::string& name);

struct MetricOptions {
  LocalDistance dtw_local = LocalDistance::kSquaredEuclidean;
  DtwPairing dtw_pairing = DtwPairing::kIndexAligned;
  std::uint64_t seed = 0;
  WelchOptions welch;
  MmdKernel kernel;
};

/// One metric per channel plus the plain mean over channels.
struct ChannelMetric {
  std::vector<double> per_channel;
  double mean = 0.0;

  static ChannelMetric from_channels(std::vector<double> values);
};

struct MetricReport {
  ChannelMetric dtw;
  ChannelMetric wasserstein;
  ChannelMetric mmd2;
  ChannelMetric spec_sim;
  std::size_t n_real = 0;
  std::size_t n_gen = 0;
  std::size_t channels = 0;
  MetricOptions options;
  /// RBF bandwidth used per channel (0 for the linear kernel).
  std::vector<double> mmd_sigma;
};

/// Per channel: 1-Wasserstein between real and generated samples of each
/// feature, averaged over the feature dimensions.
ChannelMetric wasserstein_metric(const SignalSet& real, const SignalSet& gen,
                                 const WelchOptions& welch = {});

/// 1 / (1 + W) with W the mean over spectral feature dimensions of the
/// 1-Wasserstein distance between real and generated PSD summaries.
double spectral_score(double mean_distance);
ChannelMetric spectral_similarity(const SignalSet& real, const SignalSet& gen,
                                  const WelchOptions& welch = {});

/// Mean DTW over the pairs selected by opts.dtw_pairing, per channel.
ChannelMetric dtw_metric(const SignalSet& real, const SignalSet& gen, const MetricOptions& opts = {});

/// Squared MMD between per-channel raw signal vectors.
ChannelMetric mmd_metric(const SignalSet& real, const SignalSet& gen, const MmdKernel& kernel = {},
                         std::vector<double>* sigma_used = nullptr);

MetricReport evaluate_all(const SignalSet& real, const SignalSet& gen, const MetricOptions& opts = {});

/// {"dtw": {"per_channel": [...], "mean": x}, "wasserstein": ..., "mmd2": ...,
///  "spec_sim": ..., "meta": {...}}
nlohmann::json to_json(const MetricReport& report);

inline constexpr const char* kReportCsvHeader = "dtw,wasserstein,mmd2,spec_sim";
std::string to_csv_row(const MetricReport& report);

}  // namespace flowgen::metrics
