// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/nn/embedding.hpp"

#include "flowgen/error.hpp"

#include <cmath>

namespace flowgen::nn {

double time_frequency(std::size_t k, std::size_t pairs) {
  if (pairs <= 1) return kTimeOmegaMin;
  const double frac = static_cast<double>(k) / static_cast<double>(pairs - 1);
  return kTimeOmegaMin * std::pow(kTimeOmegaMax / kTimeOmegaMin, frac);
}

Eigen::VectorXd embed_time(double t, std::size_t width) {
  require(width % 2 == 0, "embed_time: width must be even");
  const std::size_t pairs = width / 2;
  Eigen::VectorXd e(static_cast<Eigen::Index>(width));
  for (std::size_t k = 0; k < pairs; ++k) {
    const double w = time_frequency(k, pairs);
    e(static_cast<Eigen::Index>(2 * k)) = std::sin(w * t);
    e(static_cast<Eigen::Index>(2 * k + 1)) = std::cos(w * t);
  }
  return e;
}

Eigen::VectorXd embed_condition(const ConditionVector& c) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(c.dim()));
  for (std::size_t i = 0; i < c.dim(); ++i) e(static_cast<Eigen::Index>(i)) = c[i] ? 1.0 : -1.0;
  return e;
}

}  // namespace flowgen::nn
