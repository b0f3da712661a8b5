// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/nn/mlp.hpp"

#include <cstdint>

namespace flowgen::nn {

struct AdamConfig {
  double learning_rate = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// First/second moment accumulators shaped like the parameters they track.
struct AdamState {
  AdamConfig config;
  Parameters first_moment;
  Parameters second_moment;
  std::uint64_t step = 0;

  static AdamState for_parameters(const Parameters& params, AdamConfig config = {});
};

/// Bias-corrected Adam update:
///   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
///   p <- p - lr * (m / (1 - b1^k)) / (sqrt(v / (1 - b2^k)) + eps)
void adam_step(Parameters& params, const Parameters& grads, AdamState& state);

}  // namespace flowgen::nn
