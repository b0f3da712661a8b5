// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/welch.hpp"

#include "flowgen/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

namespace flowgen::metrics {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
fftw_plan r2c_plan(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = plans.find(n); it != plans.end()) return it->second;
  std::vector<double> in(n);
  std::vector<fftw_complex> out(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw Error("welch_psd: FFTW planning failed");
  plans.emplace(n, p);
  return p;
}

std::vector<double> make_window(Window w, std::size_t n) {
  std::vector<double> out(n, 1.0);
  if (w == Window::kHann) {
    // Periodic Hann.
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    }
  }
  return out;
}

}  // namespace

std::string to_string(Window w) { return w == Window::kHann ? "hann" : "rectangular"; }

Window parse_window(const std::string& name) {
  if (name == "hann") return Window::kHann;
  if (name == "rectangular") return Window::kRectangular;
  throw ValidationError(fmt::format("unknown window '{}' (expected hann or rectangular)", name));
}

Psd welch_psd(std::span<const double> x, double sample_rate_hz, const WelchOptions& opts) {
  const std::size_t len = opts.segment_len;
  require(len >= 2, "welch_psd: segment length must be at least 2");
  require(len <= x.size(), fmt::format("welch_psd: segment length {} exceeds signal length {}", len,
                                       x.size()));
  require(opts.overlap_frac >= 0.0 && opts.overlap_frac <= 0.9,
          "welch_psd: overlap fraction must be in [0, 0.9]");
  require(std::isfinite(sample_rate_hz) && sample_rate_hz > 0.0,
          "welch_psd: sample rate must be positive");

  const auto overlap = static_cast<std::size_t>(std::floor(static_cast<double>(len) * opts.overlap_frac));
  const std::size_t hop = len - overlap;
  const std::size_t bins = len / 2 + 1;
  const auto window = make_window(opts.window, len);
  double window_power = 0.0;
  for (double w : window) window_power += w * w;
  const double scale = 1.0 / (sample_rate_hz * window_power);

  fftw_plan plan = r2c_plan(len);
  std::vector<double> buf(len);
  std::vector<fftw_complex> spec(bins);
  Psd psd;
  psd.bin_width_hz = sample_rate_hz / static_cast<double>(len);
  psd.power.assign(bins, 0.0);
  psd.freqs_hz.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) psd.freqs_hz[k] = static_cast<double>(k) * psd.bin_width_hz;

  std::size_t segments = 0;
  for (std::size_t start = 0; start + len <= x.size(); start += hop) {
    double mean = 0.0;
    for (std::size_t i = 0; i < len; ++i) mean += x[start + i];
    mean /= static_cast<double>(len);
    for (std::size_t i = 0; i < len; ++i) buf[i] = (x[start + i] - mean) * window[i];
    fftw_execute_dft_r2c(plan, buf.data(), spec.data());
    for (std::size_t k = 0; k < bins; ++k) {
      double p = (spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1]) * scale;
      const bool nyquist = len % 2 == 0 && k == len / 2;
      if (k != 0 && !nyquist) p *= 2.0;
      psd.power[k] += p;
    }
    ++segments;
  }
  for (double& p : psd.power) p /= static_cast<double>(segments);
  return psd;
}

}  // namespace flowgen::metrics
