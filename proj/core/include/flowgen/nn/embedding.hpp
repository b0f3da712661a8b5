// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/signal.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace flowgen::nn {

inline constexpr double kTimeOmegaMin = 1.0;
inline constexpr double kTimeOmegaMax = 100.0;

/// Angular frequency of pair k out of `pairs`, geometrically spaced between
/// kTimeOmegaMin and kTimeOmegaMax.
double time_frequency(std::size_t k, std::size_t pairs);

/// [sin(w_0 t), cos(w_0 t), sin(w_1 t), cos(w_1 t), ...]; width must be even.
Eigen::VectorXd embed_time(double t, std::size_t width);

/// Maps bits {0,1} to {-1,+1}.
Eigen::VectorXd embed_condition(const ConditionVector& c);

}  // namespace flowgen::nn
