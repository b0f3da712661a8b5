// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/signal.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace flowgen {

/// A conditional time-dependent map R^dim -> R^dim, f(x, c, t).
///
/// The flow sampler treats it as a velocity field; the diffusion sampler as a
/// noise predictor. evaluate() must be const and safe to call concurrently.
class VectorField {
 public:
  virtual ~VectorField() = default;

  virtual std::size_t dim() const = 0;
  virtual Eigen::VectorXd evaluate(const Eigen::VectorXd& x, const ConditionVector& c,
                                   double t) const = 0;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x, const ConditionVector& c, double t) const {
    return evaluate(x, c, t);
  }
};

}  // namespace flowgen
