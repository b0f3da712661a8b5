// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>

namespace flowgen::metrics {

enum class LocalDistance {
  kSquaredEuclidean,
  kAbsolute,
};

std::string to_string(LocalDistance d);
LocalDistance parse_local_distance(const std::string& name);

/// Full N x M dynamic-time-warping cost with steps (1,0), (0,1), (1,1):
/// D(i,j) = d(x_i, y_j) + min(D(i-1,j), D(i,j-1), D(i-1,j-1)), D(1,1) = d(x_1, y_1).
double dtw_distance(std::span<const double> x, std::span<const double> y,
                    LocalDistance local = LocalDistance::kSquaredEuclidean);

}  // namespace flowgen::metrics
