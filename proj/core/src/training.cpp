// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/training.hpp"

#include "flowgen/error.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace flowgen {

void TrainOptions::validate() const {
  require(batch_size > 0, "TrainOptions: batch_size must be positive");
  require(std::isfinite(learning_rate) && learning_rate > 0.0,
          "TrainOptions: learning rate must be positive");
  require(log_every > 0, "TrainOptions: log_every must be positive");
}

TrainResult train_mse(nn::VelocityModel model, const TrainOptions& opts, const BatchSource& source) {
  opts.validate();
  nn::AdamConfig adam_cfg;
  adam_cfg.learning_rate = opts.learning_rate;
  auto state = nn::AdamState::for_parameters(model.parameters(), adam_cfg);
  Rng rng(derive_seed(opts.seed, "train.batches"));

  std::vector<double> losses;
  std::vector<LossRecord> trace;
  losses.reserve(opts.steps);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t step = 0; step < opts.steps; ++step) {
    const nn::MseBatch batch = source(rng);
    auto [loss, grads] = nn::backward(model, batch);
    if (!std::isfinite(loss)) {
      throw NumericError(fmt::format("training diverged: non-finite loss at step {}", step));
    }
    nn::adam_step(model.mutable_parameters(), grads, state);
    if (!model.parameters().all_finite()) {
      throw NumericError(fmt::format("training diverged: non-finite parameter after step {}", step));
    }
    losses.push_back(loss);
    if (step % opts.log_every == 0 || step + 1 == opts.steps) {
      const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
      trace.push_back({step, loss, elapsed.count()});
    }
  }
  return {std::move(model), std::move(state), std::move(losses), std::move(trace)};
}

void write_loss_trace_csv(std::ostream& out, const std::vector<LossRecord>& trace) {
  out << "step,loss,wall_ms\n";
  for (const auto& r : trace) out << fmt::format("{},{:.17g},{:.3f}\n", r.step, r.loss, r.wall_ms);
}

}  // namespace flowgen
