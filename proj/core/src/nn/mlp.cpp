// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/nn/mlp.hpp"

#include "flowgen/error.hpp"
#include "flowgen/nn/embedding.hpp"
#include "flowgen/rng.hpp"

#include <cmath>

#include <fmt/format.h>

namespace flowgen::nn {
namespace {

using Eigen::Index;

Eigen::MatrixXd silu(const Eigen::MatrixXd& z) {
  return z.unaryExpr([](double v) { return nn::silu(v); });
}

}  // namespace

void ModelSpec::validate() const {
  require(shape.channels > 0 && shape.samples > 0, "ModelSpec: empty signal shape");
  require(condition_dim > 0, "ModelSpec: condition_dim must be positive");
  require(time_embed_dim > 0 && time_embed_dim % 2 == 0,
          "ModelSpec: time_embed_dim must be positive and even");
  for (auto h : hidden_sizes) require(h > 0, "ModelSpec: hidden sizes must be positive");
}

std::size_t Parameters::count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

double& Parameters::operator[](std::size_t k) {
  for (auto& l : layers) {
    const auto nw = static_cast<std::size_t>(l.weight.size());
    if (k < nw) return l.weight.data()[k];
    k -= nw;
    const auto nb = static_cast<std::size_t>(l.bias.size());
    if (k < nb) return l.bias.data()[k];
    k -= nb;
  }
  throw ContractViolation("Parameters: flat index out of range");
}

double Parameters::operator[](std::size_t k) const {
  return const_cast<Parameters&>(*this)[k];
}

Parameters Parameters::zeros_like() const {
  Parameters z;
  z.layers.reserve(layers.size());
  for (const auto& l : layers) {
    z.layers.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())});
  }
  return z;
}

bool Parameters::all_finite() const {
  for (const auto& l : layers) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

bool Parameters::operator==(const Parameters& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& a = layers[i];
    const auto& b = other.layers[i];
    if (a.weight.rows() != b.weight.rows() || a.weight.cols() != b.weight.cols() ||
        a.bias.size() != b.bias.size() || a.weight != b.weight || a.bias != b.bias) {
      return false;
    }
  }
  return true;
}

double silu(double z) noexcept { return z / (1.0 + std::exp(-z)); }

double silu_derivative(double z) noexcept {
  const double s = 1.0 / (1.0 + std::exp(-z));
  return s * (1.0 + z * (1.0 - s));
}

VelocityModel::VelocityModel(ModelSpec spec, std::uint64_t init_seed, InitMode mode)
    : spec_(std::move(spec)) {
  spec_.validate();
  Rng rng(derive_seed(init_seed, "nn.init"));
  std::size_t fan_in = spec_.input_dim();
  std::vector<std::size_t> outs = spec_.hidden_sizes;
  outs.push_back(spec_.signal_dim());
  for (std::size_t li = 0; li < outs.size(); ++li) {
    const bool output_layer = li + 1 == outs.size();
    DenseLayer layer{Eigen::MatrixXd::Zero(static_cast<Index>(outs[li]), static_cast<Index>(fan_in)),
                     Eigen::VectorXd::Zero(static_cast<Index>(outs[li]))};
    if (!output_layer || mode == InitMode::kRandomAll) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (Index j = 0; j < layer.weight.cols(); ++j) {
        for (Index i = 0; i < layer.weight.rows(); ++i) layer.weight(i, j) = uniform(rng, -bound, bound);
      }
      if (mode == InitMode::kRandomAll) {
        for (Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = uniform(rng, -bound, bound);
      }
    }
    params_.layers.push_back(std::move(layer));
    fan_in = outs[li];
  }
}

VelocityModel::VelocityModel(ModelSpec spec, Parameters params)
    : spec_(std::move(spec)), params_(std::move(params)) {
  spec_.validate();
  check_shapes();
}

void VelocityModel::check_shapes() const {
  require(params_.layers.size() == spec_.hidden_sizes.size() + 1,
          fmt::format("VelocityModel: {} layers, expected {}", params_.layers.size(),
                      spec_.hidden_sizes.size() + 1));
  std::size_t fan_in = spec_.input_dim();
  for (std::size_t li = 0; li < params_.layers.size(); ++li) {
    const auto& l = params_.layers[li];
    const std::size_t out =
        li < spec_.hidden_sizes.size() ? spec_.hidden_sizes[li] : spec_.signal_dim();
    require(static_cast<std::size_t>(l.weight.rows()) == out &&
                static_cast<std::size_t>(l.weight.cols()) == fan_in &&
                static_cast<std::size_t>(l.bias.size()) == out,
            fmt::format("VelocityModel: layer {} is {}x{}, expected {}x{}", li, l.weight.rows(),
                        l.weight.cols(), out, fan_in));
    fan_in = out;
  }
}

Eigen::MatrixXd VelocityModel::assemble_input(const Eigen::MatrixXd& x,
                                              const std::vector<ConditionVector>& c,
                                              const std::vector<double>& t) const {
  const Index batch = x.cols();
  require(static_cast<std::size_t>(x.rows()) == spec_.signal_dim(),
          fmt::format("VelocityModel: input has {} rows, model expects {}", x.rows(),
                      spec_.signal_dim()));
  require(c.size() == static_cast<std::size_t>(batch) && t.size() == static_cast<std::size_t>(batch),
          "VelocityModel: conditions/times do not match batch size");
  const auto d = static_cast<Index>(spec_.signal_dim());
  const auto te = static_cast<Index>(spec_.time_embed_dim);
  const auto ce = static_cast<Index>(spec_.condition_dim);
  Eigen::MatrixXd z(static_cast<Index>(spec_.input_dim()), batch);
  z.topRows(d) = x;
  for (Index b = 0; b < batch; ++b) {
    const auto& cond = c[static_cast<std::size_t>(b)];
    const double time = t[static_cast<std::size_t>(b)];
    require(cond.dim() == spec_.condition_dim,
            fmt::format("VelocityModel: condition width {} but model expects {}", cond.dim(),
                        spec_.condition_dim));
    require(std::isfinite(time) && time >= 0.0 && time <= 1.0,
            fmt::format("VelocityModel: time {} outside [0, 1]", time));
    z.block(d, b, te, 1) = embed_time(time, spec_.time_embed_dim);
    z.block(d + te, b, ce, 1) = embed_condition(cond);
  }
  return z;
}

Eigen::MatrixXd VelocityModel::forward_batch(const Eigen::MatrixXd& x,
                                             const std::vector<ConditionVector>& c,
                                             const std::vector<double>& t) const {
  Eigen::MatrixXd h = assemble_input(x, c, t);
  const std::size_t last = params_.layers.size() - 1;
  for (std::size_t li = 0; li < params_.layers.size(); ++li) {
    const auto& l = params_.layers[li];
    Eigen::MatrixXd z = l.weight * h;
    z.colwise() += l.bias;
    h = li == last ? std::move(z) : silu(z);
  }
  return h;
}

Eigen::VectorXd VelocityModel::evaluate(const Eigen::VectorXd& x, const ConditionVector& c,
                                        double t) const {
  return forward_batch(x, {c}, {t}).col(0);
}

LossAndGradients backward(const VelocityModel& model, const MseBatch& batch) {
  require(batch.inputs.cols() > 0, "backward: batch must be nonempty");
  require(batch.targets.rows() == batch.inputs.rows() && batch.targets.cols() == batch.inputs.cols(),
          "backward: targets must match inputs in shape");
  const auto& layers = model.parameters().layers;
  const std::size_t n_layers = layers.size();

  // Forward, keeping pre-activations and layer inputs.
  std::vector<Eigen::MatrixXd> inputs(n_layers);
  std::vector<Eigen::MatrixXd> pre(n_layers);
  Eigen::MatrixXd h = model.assemble_input(batch.inputs, batch.conditions, batch.times);
  for (std::size_t li = 0; li < n_layers; ++li) {
    inputs[li] = h;
    pre[li] = layers[li].weight * h;
    pre[li].colwise() += layers[li].bias;
    h = li + 1 == n_layers ? pre[li] : pre[li].unaryExpr([](double v) { return silu(v); });
  }

  const Eigen::MatrixXd residual = h - batch.targets;
  const double denom = static_cast<double>(residual.size());
  LossAndGradients out;
  out.loss = residual.squaredNorm() / denom;
  out.gradients = model.parameters().zeros_like();

  Eigen::MatrixXd delta = (2.0 / denom) * residual;
  for (std::size_t li = n_layers; li-- > 0;) {
    out.gradients.layers[li].weight.noalias() = delta * inputs[li].transpose();
    out.gradients.layers[li].bias = delta.rowwise().sum();
    if (li == 0) break;
    Eigen::MatrixXd upstream = layers[li].weight.transpose() * delta;
    delta = upstream.cwiseProduct(pre[li - 1].unaryExpr([](double v) { return silu_derivative(v); }));
  }
  return out;
}

double mse_loss(const VelocityModel& model, const MseBatch& batch) {
  require(batch.inputs.cols() > 0, "mse_loss: batch must be nonempty");
  const Eigen::MatrixXd out = model.forward_batch(batch.inputs, batch.conditions, batch.times);
  return (out - batch.targets).squaredNorm() / static_cast<double>(out.size());
}

}  // namespace flowgen::nn
