// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

namespace flowgen::metrics {

/// Exact 1-Wasserstein distance between two uniform empirical distributions
/// on the real line. Equal sizes: mean |a_(i) - b_(i)| over sorted samples.
/// Otherwise: integral of |F_a - F_b| over the merged support.
double wasserstein1_1d(std::span<const double> a, std::span<const double> b);

}  // namespace flowgen::metrics
