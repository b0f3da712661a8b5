// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/field.hpp"
#include "flowgen/signal.hpp"
#include "flowgen/training.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace flowgen {

/// Training tuples for the linear noise-to-data path. Columns are items.
/// Invariants: xt = (1 - t) x0 + t x1 and v_target = x1 - x0, per item.
struct FlowBatch {
  Eigen::MatrixXd x0;
  Eigen::MatrixXd x1;
  Eigen::MatrixXd xt;
  Eigen::MatrixXd v_target;
  std::vector<double> t;
  std::vector<ConditionVector> c;

  std::size_t size() const noexcept { return t.size(); }
};

/// (1 - t) x0 + t x1; exact at both endpoints.
Eigen::VectorXd interpolate(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, double t);

/// x1 - x0 (constant along the linear path).
Eigen::VectorXd target_velocity(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1);

/// Populates the derived fields from (x0, x1, t, c).
FlowBatch make_flow_batch(Eigen::MatrixXd x0, Eigen::MatrixXd x1, std::vector<double> t,
                          std::vector<ConditionVector> c);

/// Mean over items of the per-element mean of (f(xt, c, t) - (x1 - x0))^2.
double fm_loss(const VectorField& model, const FlowBatch& batch);

/// x1 and its condition drawn uniformly from the dataset, x0 ~ N(0, I),
/// t ~ U[0, 1) independently per item.
FlowBatch sample_batch(const LabeledDataset& ds, std::size_t batch_size, Rng& rng);

/// Regression batch for the velocity network: inputs xt, targets x1 - x0.
nn::MseBatch to_mse_batch(const FlowBatch& batch);

TrainResult train_flow(nn::VelocityModel model, const LabeledDataset& ds, const TrainOptions& opts);

}  // namespace flowgen
