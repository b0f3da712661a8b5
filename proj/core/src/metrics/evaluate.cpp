// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/evaluate.hpp"

#include "flowgen/error.hpp"
#include "flowgen/metrics/features.hpp"
#include "flowgen/metrics/wasserstein.hpp"
#include "flowgen/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace flowgen::metrics {
namespace {

void check_compatible(const SignalSet& real, const SignalSet& gen, const char* who) {
  require(!real.empty() && !gen.empty(), fmt::format("{}: sets must be nonempty", who));
  const SignalShape shape = real.front().shape();
  for (const auto* set : {&real, &gen}) {
    for (const auto& s : *set) {
      require(s.shape() == shape, fmt::format("{}: shape {} differs from {}", who,
                                              to_string(s.shape()), to_string(shape)));
    }
  }
}

std::vector<std::size_t> subsample(std::size_t size, std::size_t keep, std::uint64_t seed) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (keep >= size) return idx;
  Rng rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

nlohmann::json channel_json(const ChannelMetric& m) {
  return {{"per_channel", m.per_channel}, {"mean", m.mean}};
}

}  // namespace

std::string to_string(DtwPairing p) { return p == DtwPairing::kIndexAligned ? "index" : "best_match"; }

DtwPairing parse_pairing(const std::string& name) {
  if (name == "index") return DtwPairing::kIndexAligned;
  if (name == "best_match") return DtwPairing::kBestMatch;
  throw ValidationError(fmt::format("unknown DTW pairing '{}' (expected index or best_match)", name));
}

ChannelMetric ChannelMetric::from_channels(std::vector<double> values) {
  ChannelMetric m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  m.per_channel = std::move(values);
  return m;
}

ChannelMetric wasserstein_metric(const SignalSet& real, const SignalSet& gen, const WelchOptions& welch) {
  check_compatible(real, gen, "wasserstein_metric");
  const std::size_t channels = real.front().channels();
  auto features = [&](const SignalSet& set) {
    std::vector<std::vector<FeatureVector>> out;
    out.reserve(set.size());
    for (const auto& s : set) out.push_back(extract_features(s, welch));
    return out;
  };
  const auto fa = features(real);
  const auto fb = features(gen);
  std::vector<double> values(channels);
  std::vector<double> col_a(fa.size()), col_b(fb.size());
  for (std::size_t c = 0; c < channels; ++c) {
    double total = 0.0;
    for (std::size_t d = 0; d < kFeatureCount; ++d) {
      for (std::size_t i = 0; i < fa.size(); ++i) col_a[i] = fa[i][c][d];
      for (std::size_t i = 0; i < fb.size(); ++i) col_b[i] = fb[i][c][d];
      total += wasserstein1_1d(col_a, col_b);
    }
    values[c] = total / static_cast<double>(kFeatureCount);
  }
  return ChannelMetric::from_channels(std::move(values));
}

ChannelMetric dtw_metric(const SignalSet& real, const SignalSet& gen, const MetricOptions& opts) {
  check_compatible(real, gen, "dtw_metric");
  const std::size_t channels = real.front().channels();
  std::vector<double> values(channels, 0.0);
  if (opts.dtw_pairing == DtwPairing::kIndexAligned) {
    const std::size_t n = std::min(real.size(), gen.size());
    const auto ri = subsample(real.size(), n, derive_seed(opts.seed, "dtw.pairing.real"));
    const auto gi = subsample(gen.size(), n, derive_seed(opts.seed, "dtw.pairing.gen"));
    for (std::size_t c = 0; c < channels; ++c) {
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        total += dtw_distance(real[ri[k]].channel(c), gen[gi[k]].channel(c), opts.dtw_local);
      }
      values[c] = total / static_cast<double>(n);
    }
  } else {
    for (std::size_t c = 0; c < channels; ++c) {
      double total = 0.0;
      for (const auto& g : gen) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : real) best = std::min(best, dtw_distance(r.channel(c), g.channel(c), opts.dtw_local));
        total += best;
      }
      values[c] = total / static_cast<double>(gen.size());
    }
  }
  return ChannelMetric::from_channels(std::move(values));
}

ChannelMetric mmd_metric(const SignalSet& real, const SignalSet& gen, const MmdKernel& kernel,
                         std::vector<double>* sigma_used) {
  check_compatible(real, gen, "mmd_metric");
  const std::size_t channels = real.front().channels();
  auto vectors = [](const SignalSet& set, std::size_t c) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(set.size());
    for (const auto& s : set) {
      const auto ch = s.channel(c);
      out.emplace_back(Eigen::Map<const Eigen::VectorXd>(ch.data(), static_cast<Eigen::Index>(ch.size())));
    }
    return out;
  };
  std::vector<double> values(channels);
  if (sigma_used != nullptr) sigma_used->assign(channels, 0.0);
  for (std::size_t c = 0; c < channels; ++c) {
    const auto x = vectors(real, c);
    const auto y = vectors(gen, c);
    MmdKernel k = kernel;
    if (k.kind == KernelKind::kRbf && !k.sigma) k.sigma = median_heuristic_sigma(x, y);
    if (sigma_used != nullptr) (*sigma_used)[c] = k.sigma.value_or(0.0);
    values[c] = mmd2(x, y, k);
  }
  return ChannelMetric::from_channels(std::move(values));
}

MetricReport evaluate_all(const SignalSet& real, const SignalSet& gen, const MetricOptions& opts) {
  check_compatible(real, gen, "evaluate_all");
  MetricReport r;
  r.n_real = real.size();
  r.n_gen = gen.size();
  r.channels = real.front().channels();
  r.options = opts;
  r.dtw = dtw_metric(real, gen, opts);
  r.wasserstein = wasserstein_metric(real, gen, opts.welch);
  r.mmd2 = mmd_metric(real, gen, opts.kernel, &r.mmd_sigma);
  r.spec_sim = spectral_similarity(real, gen, opts.welch);
  return r;
}

nlohmann::json to_json(const MetricReport& report) {
  const auto& o = report.options;
  nlohmann::json meta = {
      {"n_real", report.n_real},
      {"n_gen", report.n_gen},
      {"channels", report.channels},
      {"dtw_local", to_string(o.dtw_local)},
      {"dtw_pairing", to_string(o.dtw_pairing)},
      {"seed", o.seed},
      {"welch_segment_len", o.welch.segment_len},
      {"welch_overlap", o.welch.overlap_frac},
      {"welch_window", to_string(o.welch.window)},
      {"mmd_kernel", to_string(o.kernel.kind)},
      {"mmd_sigma", report.mmd_sigma},
      {"feature_count", static_cast<std::size_t>(kFeatureCount)},
  };
  return {{"dtw", channel_json(report.dtw)},
          {"wasserstein", channel_json(report.wasserstein)},
          {"mmd2", channel_json(report.mmd2)},
          {"spec_sim", channel_json(report.spec_sim)},
          {"meta", std::move(meta)}};
}

std::string to_csv_row(const MetricReport& report) {
  return fmt::format("{:.10g},{:.10g},{:.10g},{:.10g}", report.dtw.mean, report.wasserstein.mean,
                     report.mmd2.mean, report.spec_sim.mean);
}

}  // namespace flowgen::metrics
