// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/field.hpp"
#include "flowgen/signal.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace flowgen::nn {

/// Architecture of the reference network:
///   concat(flatten(x), embed_time(t), embed_condition(c))
///     -> [Linear -> SiLU] x hidden_sizes.size() -> Linear -> flatten(x) shape.
struct ModelSpec {
  SignalShape shape;
  std::size_t condition_dim = 0;
  std::size_t time_embed_dim = 16;
  std::vector<std::size_t> hidden_sizes = {256, 256};

  std::size_t signal_dim() const noexcept { return shape.size(); }
  std::size_t input_dim() const noexcept { return signal_dim() + time_embed_dim + condition_dim; }
  void validate() const;
  bool operator==(const ModelSpec&) const = default;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Weights and biases of every layer; also used for gradients and Adam moments.
struct Parameters {
  std::vector<DenseLayer> layers;

  std::size_t count() const noexcept;
  /// Flat view: layer by layer, weights (column-major, as stored) then biases.
  double& operator[](std::size_t k);
  double operator[](std::size_t k) const;
  Parameters zeros_like() const;
  bool all_finite() const;
  bool operator==(const Parameters& other) const;
};

enum class InitMode {
  /// Fan-in scaled uniform hidden layers, zero output layer (initial field is 0).
  kZeroOutput,
  /// Every layer fan-in scaled uniform; used by gradient checks.
  kRandomAll,
};

double silu(double z) noexcept;
double silu_derivative(double z) noexcept;

class VelocityModel final : public VectorField {
 public:
  VelocityModel(ModelSpec spec, std::uint64_t init_seed, InitMode mode = InitMode::kZeroOutput);
  VelocityModel(ModelSpec spec, Parameters params);

  std::size_t dim() const override { return spec_.signal_dim(); }
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x, const ConditionVector& c,
                           double t) const override;

  /// Column-batched forward pass; x is signal_dim x batch.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x, const std::vector<ConditionVector>& c,
                                const std::vector<double>& t) const;

  /// Stacks [x; embed_time(t); embed_condition(c)] per column.
  Eigen::MatrixXd assemble_input(const Eigen::MatrixXd& x, const std::vector<ConditionVector>& c,
                                 const std::vector<double>& t) const;

  const ModelSpec& spec() const noexcept { return spec_; }
  const Parameters& parameters() const noexcept { return params_; }
  Parameters& mutable_parameters() noexcept { return params_; }

 private:
  void check_shapes() const;

  ModelSpec spec_;
  Parameters params_;
};

/// Inputs and regression targets for one mean-squared-error step. Columns are
/// batch items.
struct MseBatch {
  Eigen::MatrixXd inputs;
  std::vector<ConditionVector> conditions;
  std::vector<double> times;
  Eigen::MatrixXd targets;
};

struct LossAndGradients {
  double loss = 0.0;
  Parameters gradients;
};

/// loss = mean over items of mean over elements of (f(x, c, t) - target)^2,
/// with analytic gradients with respect to every parameter.
LossAndGradients backward(const VelocityModel& model, const MseBatch& batch);

/// Loss only; same value as backward(model, batch).loss.
double mse_loss(const VelocityModel& model, const MseBatch& batch);

}  // namespace flowgen::nn
