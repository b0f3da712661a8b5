// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/field.hpp"
#include "flowgen/nn/adam.hpp"
#include "flowgen/nn/mlp.hpp"
#include "flowgen/signal.hpp"
#include "flowgen/training.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace flowgen {

/// Linear beta schedule and its derived products.
struct NoiseSchedule {
  std::size_t steps = 0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  std::vector<double> betas;
  std::vector<double> alphas;
  std::vector<double> alpha_bars;
};

/// betas[i] = lerp(beta_min, beta_max, i / (T - 1)); endpoints are exact.
/// Rejects schedules whose abar_{T-1} falls below the smallest normal double.
NoiseSchedule make_schedule(std::size_t steps = 200, double beta_min = 1e-4, double beta_max = 0.02);

/// sqrt(abar_t) x0 + sqrt(1 - abar_t) eps.
Eigen::VectorXd q_sample(const Eigen::VectorXd& x0, std::size_t t_index, const Eigen::VectorXd& eps,
                         const NoiseSchedule& sched);

/// Network time input for step t_index: t_index / (T - 1), in [0, 1].
double diffusion_time(std::size_t t_index, const NoiseSchedule& sched);

/// Noise-prediction training tuples. Columns are items.
struct DiffusionBatch {
  Eigen::MatrixXd x0;
  Eigen::MatrixXd eps;
  Eigen::MatrixXd xt;
  std::vector<std::size_t> t_index;
  std::vector<ConditionVector> c;

  std::size_t size() const noexcept { return t_index.size(); }
};

/// x0 and condition drawn uniformly from the dataset, t_index ~ U{0..T-1},
/// eps ~ N(0, I).
DiffusionBatch sample_diffusion_batch(const LabeledDataset& ds, const NoiseSchedule& sched,
                                      std::size_t batch_size, Rng& rng);

/// Mean over items of the per-element mean of (f(xt, c, t) - eps)^2.
double ddpm_loss(const VectorField& model, const DiffusionBatch& batch, const NoiseSchedule& sched);

nn::MseBatch to_mse_batch(const DiffusionBatch& batch, const NoiseSchedule& sched);

/// One epsilon-prediction MSE step with an Adam update; returns the batch loss.
double ddpm_train_step(nn::VelocityModel& model, nn::AdamState& adam, const LabeledDataset& ds,
                       const NoiseSchedule& sched, std::size_t batch_size, Rng& rng);

TrainResult train_ddpm(nn::VelocityModel model, const LabeledDataset& ds, const NoiseSchedule& sched,
                       const TrainOptions& opts);

/// Descending timesteps visited by a reduced-NFE sampler:
/// round(k (T - 1) / (nfe - 1)) for k = nfe-1 .. 0, so T-1 and 0 are always
/// included. nfe = 1 visits only T-1.
std::vector<std::size_t> strided_timesteps(std::size_t steps, std::size_t nfe);

/// Ancestral reverse chain from x_T over strided_timesteps(T, nfe). Between
/// visited steps s > p the posterior uses abar_s / abar_p in place of alpha;
/// the last step returns the posterior mean with no added noise. With
/// nfe = T this is the standard DDPM sampler with variance beta-tilde.
Eigen::VectorXd ancestral_sample_flat(const VectorField& model, Eigen::VectorXd x_start,
                                      const ConditionVector& c, const NoiseSchedule& sched,
                                      std::size_t nfe, Rng& noise_rng);

/// x_T = initial_noise(dim, seed) (the same start as the flow sampler).
MultiLeadSignal ancestral_sample(const VectorField& model, const SignalShape& shape,
                                 const ConditionVector& c, const NoiseSchedule& sched,
                                 std::size_t nfe, std::uint64_t seed);

/// Item i uses item_seed(seed, i); output order matches input.
std::vector<MultiLeadSignal> ddpm_batch_generate(const VectorField& model, const SignalShape& shape,
                                                 const std::vector<ConditionVector>& conditions,
                                                 const NoiseSchedule& sched, std::size_t nfe,
                                                 std::uint64_t seed);

}  // namespace flowgen
