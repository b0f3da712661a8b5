// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/field.hpp"
#include "flowgen/signal.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace flowgen {

enum class Integrator {
  kEuler,
  /// Explicit midpoint; two field evaluations per step, both counted as NFE.
  kMidpoint,
};

std::string to_string(Integrator m);
Integrator parse_integrator(const std::string& name);

struct SampleRequest {
  ConditionVector condition;
  std::size_t nfe = 1;
  std::uint64_t seed = 0;
  Integrator method = Integrator::kEuler;
};

/// Standard normal starting point of a generation, seeded.
Eigen::VectorXd initial_noise(std::size_t dim, std::uint64_t seed);

/// Integrates dx/dt = f(x, c, t) from t = 0 to 1 on a fixed grid using exactly
/// `nfe` evaluations of `field`. Euler uses left endpoints t_k = k / nfe;
/// midpoint takes nfe / 2 steps and requires an even nfe.
Eigen::VectorXd integrate_flat(const VectorField& field, Eigen::VectorXd x0, const ConditionVector& c,
                               std::size_t nfe, Integrator method = Integrator::kEuler);

/// Draws x(0) from initial_noise(shape.size(), req.seed) and returns x(1).
MultiLeadSignal integrate(const VectorField& field, const SignalShape& shape, const SampleRequest& req);

/// Seed of item i in a batch generation.
std::uint64_t item_seed(std::uint64_t seed, std::size_t index);

/// Item i is integrate(...) with item_seed(seed, i); output order matches input.
std::vector<MultiLeadSignal> batch_generate(const VectorField& field, const SignalShape& shape,
                                            const std::vector<ConditionVector>& conditions,
                                            std::size_t nfe, std::uint64_t seed,
                                            Integrator method = Integrator::kEuler);

}  // namespace flowgen
