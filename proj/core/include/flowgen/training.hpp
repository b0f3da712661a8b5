// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/nn/adam.hpp"
#include "flowgen/nn/mlp.hpp"
#include "flowgen/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace flowgen {

struct TrainOptions {
  std::size_t steps = 0;
  std::size_t batch_size = 6;
  double learning_rate = 2e-4;
  std::uint64_t seed = 0;
  /// A trace row is kept every log_every steps (and for the final step).
  std::size_t log_every = 1;

  void validate() const;
};

struct LossRecord {
  std::size_t step = 0;
  double loss = 0.0;
  double wall_ms = 0.0;
};

struct TrainResult {
  nn::VelocityModel model;
  nn::AdamState optimizer;
  /// Loss of every step, in order.
  std::vector<double> losses;
  std::vector<LossRecord> trace;
};

/// Builds the regression batch for one optimizer step.
using BatchSource = std::function<nn::MseBatch(Rng&)>;

/// Shared single-writer loop: draw a batch, backprop, Adam update. Throws
/// NumericError naming the step when a loss is not finite.
TrainResult train_mse(nn::VelocityModel model, const TrainOptions& opts, const BatchSource& source);

/// CSV with header "step,loss,wall_ms".
void write_loss_trace_csv(std::ostream& out, const std::vector<LossRecord>& trace);

}  // namespace flowgen
