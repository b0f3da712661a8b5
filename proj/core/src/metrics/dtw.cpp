// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/dtw.hpp"

#include "flowgen/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace flowgen::metrics {

std::string to_string(LocalDistance d) {
  return d == LocalDistance::kSquaredEuclidean ? "sq_euclidean" : "abs";
}

LocalDistance parse_local_distance(const std::string& name) {
  if (name == "sq_euclidean") return LocalDistance::kSquaredEuclidean;
  if (name == "abs") return LocalDistance::kAbsolute;
  throw ValidationError(fmt::format("unknown DTW local distance '{}' (expected sq_euclidean or abs)", name));
}

double dtw_distance(std::span<const double> x, std::span<const double> y, LocalDistance local) {
  require(!x.empty() && !y.empty(), "dtw_distance: sequences must be nonempty");
  auto d = [local](double a, double b) {
    const double diff = a - b;
    return local == LocalDistance::kSquaredEuclidean ? diff * diff : std::abs(diff);
  };
  const std::size_t m = y.size();
  // Two rolling rows of the cost matrix.
  std::vector<double> prev(m), cur(m);
  prev[0] = d(x[0], y[0]);
  for (std::size_t j = 1; j < m; ++j) prev[j] = prev[j - 1] + d(x[0], y[j]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    cur[0] = prev[0] + d(x[i], y[0]);
    for (std::size_t j = 1; j < m; ++j) {
      cur[j] = d(x[i], y[j]) + std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace flowgen::metrics
