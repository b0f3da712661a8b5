// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace flowgen::metrics {

enum class Window {
  kHann,
  kRectangular,
};

std::string to_string(Window w);
Window parse_window(const std::string& name);

struct WelchOptions {
  std::size_t segment_len = 256;
  double overlap_frac = 0.5;
  Window window = Window::kHann;
};

/// One-sided power spectral density on bins k * fs / segment_len,
/// k = 0 .. segment_len / 2.
struct Psd {
  std::vector<double> freqs_hz;
  std::vector<double> power;
  double bin_width_hz = 0.0;
};

/// Welch average of mean-removed, windowed periodograms. Density scaling
/// 1 / (fs * sum w^2) with non-DC/non-Nyquist bins doubled, so that
/// sum(power) * bin_width approximates the signal variance.
Psd welch_psd(std::span<const double> x, double sample_rate_hz, const WelchOptions& opts = {});

}  // namespace flowgen::metrics
