// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/wasserstein.hpp"

#include "flowgen/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace flowgen::metrics {

double wasserstein1_1d(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), "wasserstein1_1d: sample sets must be nonempty");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::size_t m = sa.size();
  const std::size_t n = sb.size();

  if (m == n) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += std::abs(sa[i] - sb[i]);
    return total / static_cast<double>(m);
  }

  // |F_a - F_b| is piecewise constant between consecutive merged support points.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t i = 0, j = 0;
  double prev = std::min(sa.front(), sb.front());
  double total = 0.0;
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  while (i < m || j < n) {
    const double next = std::min(i < m ? sa[i] : inf, j < n ? sb[j] : inf);
    const double gap = std::abs(static_cast<double>(i) * static_cast<double>(n) -
                                static_cast<double>(j) * static_cast<double>(m));
    total += gap / mn * (next - prev);
    while (i < m && sa[i] == next) ++i;
    while (j < n && sb[j] == next) ++j;
    prev = next;
  }
  return total;
}

}  // namespace flowgen::metrics
