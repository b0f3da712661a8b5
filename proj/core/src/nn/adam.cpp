// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/nn/adam.hpp"

#include "flowgen/error.hpp"

#include <cmath>

namespace flowgen::nn {

void AdamConfig::validate() const {
  require(std::isfinite(learning_rate) && learning_rate > 0.0, "Adam: learning rate must be positive");
  require(beta1 >= 0.0 && beta1 < 1.0, "Adam: beta1 must be in [0, 1)");
  require(beta2 >= 0.0 && beta2 < 1.0, "Adam: beta2 must be in [0, 1)");
  require(epsilon > 0.0, "Adam: epsilon must be positive");
}

AdamState AdamState::for_parameters(const Parameters& params, AdamConfig config) {
  config.validate();
  return {config, params.zeros_like(), params.zeros_like(), 0};
}

void adam_step(Parameters& params, const Parameters& grads, AdamState& state) {
  require(params.layers.size() == grads.layers.size() &&
              params.layers.size() == state.first_moment.layers.size(),
          "adam_step: parameter/gradient/state layer counts differ");
  ++state.step;
  const auto& cfg = state.config;
  const double k = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(cfg.beta1, k);
  const double correction2 = 1.0 - std::pow(cfg.beta2, k);

  auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
    require(p.size() == g.size() && p.size() == m.size(), "adam_step: shape mismatch");
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseAbs2();
    p.array() -= cfg.learning_rate * (m.array() / correction1) /
                 ((v.array() / correction2).sqrt() + cfg.epsilon);
  };
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    update(params.layers[i].weight, grads.layers[i].weight, state.first_moment.layers[i].weight,
           state.second_moment.layers[i].weight);
    update(params.layers[i].bias, grads.layers[i].bias, state.first_moment.layers[i].bias,
           state.second_moment.layers[i].bias);
  }
}

}  // namespace flowgen::nn
