// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/flow_matching.hpp"

#include "flowgen/error.hpp"

#include <cmath>

#include <fmt/format.h>

namespace flowgen {

Eigen::VectorXd interpolate(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, double t) {
  require(x0.size() == x1.size(), "interpolate: x0 and x1 differ in size");
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0,
          fmt::format("interpolate: t = {} outside [0, 1]", t));
  if (t == 0.0) return x0;
  if (t == 1.0) return x1;
  return (1.0 - t) * x0 + t * x1;
}

Eigen::VectorXd target_velocity(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1) {
  require(x0.size() == x1.size(), "target_velocity: x0 and x1 differ in size");
  return x1 - x0;
}

FlowBatch make_flow_batch(Eigen::MatrixXd x0, Eigen::MatrixXd x1, std::vector<double> t,
                          std::vector<ConditionVector> c) {
  require(x0.rows() == x1.rows() && x0.cols() == x1.cols(), "make_flow_batch: x0/x1 shape mismatch");
  require(t.size() == static_cast<std::size_t>(x0.cols()) && c.size() == t.size(),
          "make_flow_batch: t/c must have one entry per item");
  FlowBatch b;
  b.xt.resize(x0.rows(), x0.cols());
  b.v_target.resize(x0.rows(), x0.cols());
  for (Eigen::Index i = 0; i < x0.cols(); ++i) {
    b.xt.col(i) = interpolate(x0.col(i), x1.col(i), t[static_cast<std::size_t>(i)]);
    b.v_target.col(i) = target_velocity(x0.col(i), x1.col(i));
  }
  b.x0 = std::move(x0);
  b.x1 = std::move(x1);
  b.t = std::move(t);
  b.c = std::move(c);
  return b;
}

double fm_loss(const VectorField& model, const FlowBatch& batch) {
  require(batch.size() > 0, "fm_loss: batch must be nonempty");
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd pred = model(batch.xt.col(col), batch.c[i], batch.t[i]);
    total += (pred - batch.v_target.col(col)).squaredNorm() / static_cast<double>(pred.size());
  }
  return total / static_cast<double>(batch.size());
}

FlowBatch sample_batch(const LabeledDataset& ds, std::size_t batch_size, Rng& rng) {
  require(!ds.empty(), "sample_batch: dataset is empty");
  require(batch_size > 0, "sample_batch: batch_size must be positive");
  const auto dim = static_cast<Eigen::Index>(ds.shape().size());
  const auto n = static_cast<Eigen::Index>(batch_size);
  Eigen::MatrixXd x0(dim, n), x1(dim, n);
  std::vector<double> t(batch_size);
  std::vector<ConditionVector> c;
  c.reserve(batch_size);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t idx = uniform_index(rng, ds.size());
    x1.col(i) = ds.signal(idx).flat_vector();
    c.push_back(ds.condition(idx));
    t[static_cast<std::size_t>(i)] = uniform01(rng);
    for (Eigen::Index k = 0; k < dim; ++k) x0(k, i) = standard_normal(rng);
  }
  return make_flow_batch(std::move(x0), std::move(x1), std::move(t), std::move(c));
}

nn::MseBatch to_mse_batch(const FlowBatch& batch) {
  return {batch.xt, batch.c, batch.t, batch.v_target};
}

TrainResult train_flow(nn::VelocityModel model, const LabeledDataset& ds, const TrainOptions& opts) {
  require(!ds.empty(), "train_flow: dataset is empty");
  require(ds.shape().size() == model.spec().signal_dim(),
          "train_flow: dataset shape does not match the model");
  return train_mse(std::move(model), opts,
                   [&](Rng& rng) { return to_mse_batch(sample_batch(ds, opts.batch_size, rng)); });
}

}  // namespace flowgen
