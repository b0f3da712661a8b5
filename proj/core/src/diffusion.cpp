// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/diffusion.hpp"

#include "flowgen/error.hpp"
#include "flowgen/ode_sampler.hpp"
#include "flowgen/parallel.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

namespace flowgen {

NoiseSchedule make_schedule(std::size_t steps, double beta_min, double beta_max) {
  require(steps >= 2, fmt::format("make_schedule: T = {} must be at least 2", steps));
  require(std::isfinite(beta_min) && std::isfinite(beta_max) && beta_min > 0.0 &&
              beta_min < beta_max && beta_max < 1.0,
          fmt::format("make_schedule: need 0 < beta_min < beta_max < 1, got [{}, {}]", beta_min,
                      beta_max));
  NoiseSchedule s;
  s.steps = steps;
  s.beta_min = beta_min;
  s.beta_max = beta_max;
  s.betas.resize(steps);
  s.alphas.resize(steps);
  s.alpha_bars.resize(steps);
  double running = 1.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(steps - 1);
    s.betas[i] = std::lerp(beta_min, beta_max, frac);
    s.alphas[i] = 1.0 - s.betas[i];
    running *= s.alphas[i];
    s.alpha_bars[i] = running;
  }
  require(running >= std::numeric_limits<double>::min(),
          fmt::format("make_schedule: cumulative alpha product underflows for T = {}, beta in [{}, {}]", steps,
                      beta_min, beta_max));
  return s;
}

Eigen::VectorXd q_sample(const Eigen::VectorXd& x0, std::size_t t_index, const Eigen::VectorXd& eps,
                         const NoiseSchedule& sched) {
  require(t_index < sched.steps,
          fmt::format("q_sample: t_index {} outside [0, {})", t_index, sched.steps));
  require(x0.size() == eps.size(), "q_sample: x0 and eps differ in size");
  const double ab = sched.alpha_bars[t_index];
  return std::sqrt(ab) * x0 + std::sqrt(1.0 - ab) * eps;
}

double diffusion_time(std::size_t t_index, const NoiseSchedule& sched) {
  return static_cast<double>(t_index) / static_cast<double>(sched.steps - 1);
}

DiffusionBatch sample_diffusion_batch(const LabeledDataset& ds, const NoiseSchedule& sched,
                                      std::size_t batch_size, Rng& rng) {
  require(!ds.empty(), "ddpm: dataset is empty");
  require(batch_size > 0, "ddpm: batch_size must be positive");
  const auto dim = static_cast<Eigen::Index>(ds.shape().size());
  const auto n = static_cast<Eigen::Index>(batch_size);
  DiffusionBatch b;
  b.x0.resize(dim, n);
  b.eps.resize(dim, n);
  b.xt.resize(dim, n);
  b.t_index.resize(batch_size);
  b.c.reserve(batch_size);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t idx = uniform_index(rng, ds.size());
    b.x0.col(i) = ds.signal(idx).flat_vector();
    b.c.push_back(ds.condition(idx));
    const std::size_t ti = uniform_index(rng, sched.steps);
    b.t_index[static_cast<std::size_t>(i)] = ti;
    for (Eigen::Index k = 0; k < dim; ++k) b.eps(k, i) = standard_normal(rng);
    b.xt.col(i) = q_sample(b.x0.col(i), ti, b.eps.col(i), sched);
  }
  return b;
}

double ddpm_loss(const VectorField& model, const DiffusionBatch& batch, const NoiseSchedule& sched) {
  require(batch.size() > 0, "ddpm_loss: batch must be nonempty");
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd pred =
        model(batch.xt.col(col), batch.c[i], diffusion_time(batch.t_index[i], sched));
    total += (pred - batch.eps.col(col)).squaredNorm() / static_cast<double>(pred.size());
  }
  return total / static_cast<double>(batch.size());
}

nn::MseBatch to_mse_batch(const DiffusionBatch& batch, const NoiseSchedule& sched) {
  std::vector<double> times;
  times.reserve(batch.size());
  for (auto ti : batch.t_index) times.push_back(diffusion_time(ti, sched));
  return {batch.xt, batch.c, std::move(times), batch.eps};
}

double ddpm_train_step(nn::VelocityModel& model, nn::AdamState& adam, const LabeledDataset& ds,
                       const NoiseSchedule& sched, std::size_t batch_size, Rng& rng) {
  const auto batch = to_mse_batch(sample_diffusion_batch(ds, sched, batch_size, rng), sched);
  auto [loss, grads] = nn::backward(model, batch);
  if (!std::isfinite(loss)) throw NumericError("ddpm_train_step: non-finite loss");
  nn::adam_step(model.mutable_parameters(), grads, adam);
  return loss;
}

TrainResult train_ddpm(nn::VelocityModel model, const LabeledDataset& ds, const NoiseSchedule& sched,
                       const TrainOptions& opts) {
  require(!ds.empty(), "train_ddpm: dataset is empty");
  require(ds.shape().size() == model.spec().signal_dim(),
          "train_ddpm: dataset shape does not match the model");
  return train_mse(std::move(model), opts, [&](Rng& rng) {
    return to_mse_batch(sample_diffusion_batch(ds, sched, opts.batch_size, rng), sched);
  });
}

std::vector<std::size_t> strided_timesteps(std::size_t steps, std::size_t nfe) {
  require(nfe >= 1 && nfe <= steps,
          fmt::format("ddpm sampler: nfe = {} must be in [1, T = {}]", nfe, steps));
  if (nfe == 1) return {steps - 1};
  std::vector<std::size_t> out;
  out.reserve(nfe);
  const double stride = static_cast<double>(steps - 1) / static_cast<double>(nfe - 1);
  for (std::size_t k = nfe; k-- > 0;) {
    out.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(k) * stride)));
  }
  return out;
}

Eigen::VectorXd ancestral_sample_flat(const VectorField& model, Eigen::VectorXd x_start,
                                      const ConditionVector& c, const NoiseSchedule& sched,
                                      std::size_t nfe, Rng& noise_rng) {
  require(static_cast<std::size_t>(x_start.size()) == model.dim(),
          "ddpm sampler: state size does not match the model");
  const auto timesteps = strided_timesteps(sched.steps, nfe);
  Eigen::VectorXd x = std::move(x_start);
  for (std::size_t k = 0; k < timesteps.size(); ++k) {
    const std::size_t s = timesteps[k];
    const bool last = k + 1 == timesteps.size();
    const double ab_t = sched.alpha_bars[s];
    const double ab_prev = last ? 1.0 : sched.alpha_bars[timesteps[k + 1]];
    const double alpha = ab_t / ab_prev;
    const double beta = 1.0 - alpha;
    const Eigen::VectorXd eps_hat = model(x, c, diffusion_time(s, sched));
    x = (x - (beta / std::sqrt(1.0 - ab_t)) * eps_hat) / std::sqrt(alpha);
    if (!last) {
      const double sigma = std::sqrt((1.0 - ab_prev) / (1.0 - ab_t) * beta);
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += sigma * standard_normal(noise_rng);
    }
  }
  if (!x.allFinite()) throw NumericError("ddpm sampler: non-finite state");
  return x;
}

MultiLeadSignal ancestral_sample(const VectorField& model, const SignalShape& shape,
                                 const ConditionVector& c, const NoiseSchedule& sched,
                                 std::size_t nfe, std::uint64_t seed) {
  require(shape.size() == model.dim(), "ancestral_sample: shape does not match the model");
  Rng noise_rng(derive_seed(seed, "ddpm.reverse"));
  const Eigen::VectorXd x =
      ancestral_sample_flat(model, initial_noise(shape.size(), seed), c, sched, nfe, noise_rng);
  return MultiLeadSignal::from_flat({x.data(), static_cast<std::size_t>(x.size())}, shape);
}

std::vector<MultiLeadSignal> ddpm_batch_generate(const VectorField& model, const SignalShape& shape,
                                                 const std::vector<ConditionVector>& conditions,
                                                 const NoiseSchedule& sched, std::size_t nfe,
                                                 std::uint64_t seed) {
  require(!conditions.empty(), "ddpm_batch_generate: no conditions given");
  strided_timesteps(sched.steps, nfe);
  std::vector<std::optional<MultiLeadSignal>> slots(conditions.size());
  parallel_for(conditions.size(), [&](std::size_t i) {
    slots[i] = ancestral_sample(model, shape, conditions[i], sched, nfe, item_seed(seed, i));
  });
  std::vector<MultiLeadSignal> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace flowgen
