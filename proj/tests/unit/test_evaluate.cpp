// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/error.hpp"
#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/metrics/features.hpp"
#include "flowgen/rng.hpp"
#include "flowgen/synth.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace flowgen;
using namespace flowgen::metrics;

namespace {

SignalSet synth_set(std::size_t n, std::uint64_t seed, std::size_t channels = 2, std::size_t samples = 128) {
  SynthSpec spec;
  spec.n_signals = n;
  spec.channels = channels;
  spec.samples = samples;
  spec.sample_rate_hz = 64.0;
  spec.condition_dim = 4;
  spec.rng_seed = seed;
  return synth_dataset(spec).signals();
}

SignalSet white_noise_like(const SignalSet& ref, std::uint64_t seed) {
  Rng rng(seed);
  SignalSet out;
  for (const auto& s : ref) {
    SignalMatrix m(s.channels(), s.samples());
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = standard_normal(rng);
    out.emplace_back(m, s.sample_rate_hz());
  }
  return out;
}

SignalSet sines(std::size_t n, double freq, std::uint64_t seed) {
  Rng rng(seed);
  SignalSet out;
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double amp = uniform(rng, 0.8, 1.2);
    SignalMatrix m(1, 256);
    for (int i = 0; i < 256; ++i) m(0, i) = amp * std::sin(2.0 * std::numbers::pi * freq * i / 100.0 + phase);
    out.emplace_back(m, 100.0);
  }
  return out;
}

}  // namespace

TEST(Evaluate, IdenticalSetsScorePerfectly) {
  const auto real = synth_set(12, 3);
  const auto r = evaluate_all(real, real);
  EXPECT_EQ(r.dtw.mean, 0.0);
  EXPECT_EQ(r.wasserstein.mean, 0.0);
  EXPECT_LE(std::abs(r.mmd2.mean), 1e-12);
  EXPECT_EQ(r.spec_sim.mean, 1.0);
  EXPECT_EQ(r.channels, 2u);
  EXPECT_EQ(r.n_real, 12u);
}

TEST(Evaluate, MeanIsAverageOfChannels) {
  const auto r = evaluate_all(synth_set(10, 4), synth_set(10, 5));
  for (const auto* m : {&r.dtw, &r.wasserstein, &r.mmd2, &r.spec_sim}) {
    ASSERT_EQ(m->per_channel.size(), 2u);
    EXPECT_DOUBLE_EQ(m->mean, 0.5 * (m->per_channel[0] + m->per_channel[1]));
  }
}

TEST(Evaluate, WhiteNoiseScoresWorseThanFreshSamples) {
  const auto real = synth_set(24, 6);
  const auto fresh = synth_set(24, 7);
  const auto noise = white_noise_like(real, 8);
  const auto good = evaluate_all(real, fresh);
  const auto bad = evaluate_all(real, noise);
  EXPECT_LT(good.dtw.mean, bad.dtw.mean);
  EXPECT_LT(good.wasserstein.mean, bad.wasserstein.mean);
  EXPECT_LT(good.mmd2.mean, bad.mmd2.mean);
  EXPECT_GT(good.spec_sim.mean, bad.spec_sim.mean);
}

TEST(Evaluate, ShiftedSetMatchesIndependentTransport) {
  const auto real = synth_set(5, 9);
  SignalSet shifted;
  for (const auto& s : real) shifted.emplace_back((s.data().array() + 1.0).matrix(), s.sample_rate_hz());
  const auto w = wasserstein_metric(real, shifted);
  ASSERT_EQ(w.per_channel.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    double total = 0.0;
    for (std::size_t d = 0; d < kFeatureCount; ++d) {
      std::vector<double> a, b;
      for (const auto& s : real) a.push_back(extract_features(s)[c][d]);
      for (const auto& s : shifted) b.push_back(extract_features(s)[c][d]);
      total += oracle::transport_w1(a, b);
    }
    EXPECT_GT(w.per_channel[c], 0.0);
    EXPECT_NEAR(w.per_channel[c], total / static_cast<double>(kFeatureCount), 1e-9);
  }
  const auto back = wasserstein_metric(shifted, real);
  EXPECT_NEAR(back.mean, w.mean, 1e-12);
}

TEST(Evaluate, SpectralSimilarityFallsWithFrequencyShift) {
  EXPECT_EQ(spectral_score(0.0), 1.0);
  EXPECT_EQ(spectral_score(1.0), 0.5);
  EXPECT_THROW(spectral_score(-1.0), ContractViolation);
  const auto real = sines(16, 5.0, 10);
  std::vector<double> scores;
  for (int d = 0; d <= 10; ++d) scores.push_back(spectral_similarity(real, sines(16, 5.0 + d, 11)).mean);
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) EXPECT_LE(scores[i + 1], scores[i] + 1e-12) << i;
  EXPECT_GT(scores.front(), 0.9);
  EXPECT_LT(scores.back(), 0.5 * scores.front());
}

TEST(Evaluate, DtwPairings) {
  const auto real = synth_set(8, 12);
  const auto gen = synth_set(6, 13);
  MetricOptions opts;
  opts.dtw_pairing = DtwPairing::kBestMatch;
  const auto best = dtw_metric(real, gen, opts);
  opts.dtw_pairing = DtwPairing::kIndexAligned;
  const auto aligned = dtw_metric(real, gen, opts);
  EXPECT_LE(best.mean, aligned.mean);
  // Best match on a superset containing every generated item is zero.
  SignalSet superset = real;
  superset.insert(superset.end(), gen.begin(), gen.end());
  opts.dtw_pairing = DtwPairing::kBestMatch;
  EXPECT_EQ(dtw_metric(superset, gen, opts).mean, 0.0);
  EXPECT_EQ(parse_pairing("best_match"), DtwPairing::kBestMatch);
  EXPECT_THROW(parse_pairing("random"), ValidationError);
}

TEST(Evaluate, JsonReportSchema) {
  const auto r = evaluate_all(synth_set(6, 14), synth_set(6, 15));
  const auto j = to_json(r);
  for (const char* key : {"dtw", "wasserstein", "mmd2", "spec_sim"}) {
    ASSERT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j[key]["per_channel"].size(), 2u);
    EXPECT_TRUE(j[key]["mean"].is_number());
  }
  EXPECT_EQ(j["meta"]["n_real"], 6);
  EXPECT_EQ(j["meta"]["dtw_local"], to_string(LocalDistance::kSquaredEuclidean));
  EXPECT_EQ(j["meta"]["mmd_sigma"].size(), 2u);
  EXPECT_EQ(j["meta"]["feature_count"], kFeatureCount);
}

TEST(Evaluate, DeterministicAndShapeChecked) {
  const auto a = synth_set(9, 16), b = synth_set(7, 17);
  MetricOptions opts;
  opts.seed = 99;
  EXPECT_EQ(to_json(evaluate_all(a, b, opts)).dump(), to_json(evaluate_all(a, b, opts)).dump());
  EXPECT_THROW(evaluate_all(a, synth_set(3, 18, 3)), ContractViolation);
  EXPECT_THROW(evaluate_all({}, b), ContractViolation);
}
