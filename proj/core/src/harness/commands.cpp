// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/harness/commands.hpp"

#include "flowgen/dataset_io.hpp"
#include "flowgen/diffusion.hpp"
#include "flowgen/error.hpp"
#include "flowgen/flow_matching.hpp"

#include <fstream>

#include <fmt/format.h>

namespace flowgen::harness {
namespace {

NoiseSchedule schedule_of(const nn::Checkpoint& ckpt) {
  if (!ckpt.schedule) throw ValidationError("diffusion checkpoint has no noise schedule");
  return make_schedule(ckpt.schedule->steps, ckpt.schedule->beta_min, ckpt.schedule->beta_max);
}

}  // namespace

TrainedModel train_model(nn::MethodTag method, const LabeledDataset& data, const nn::ModelSpec& spec,
                         std::uint64_t init_seed, const TrainOptions& opts, const ScheduleConfig& schedule) {
  if (data.shape() != spec.shape) {
    throw ValidationError(fmt::format("training data shape {} does not match model shape {}",
                                      to_string(data.shape()), to_string(spec.shape)));
  }
  if (data.condition_dim() != spec.condition_dim) {
    throw ValidationError(fmt::format("training data condition width {} does not match model width {}",
                                      data.condition_dim(), spec.condition_dim));
  }
  nn::VelocityModel init(spec, init_seed);
  std::optional<TrainResult> result;
  std::optional<nn::ScheduleMeta> meta;
  switch (method) {
    case nn::MethodTag::kFlowMatching:
      result.emplace(train_flow(std::move(init), data, opts));
      break;
    case nn::MethodTag::kDiffusion: {
      const NoiseSchedule sched = make_schedule(schedule.steps, schedule.beta_min, schedule.beta_max);
      result.emplace(train_ddpm(std::move(init), data, sched, opts));
      meta = nn::ScheduleMeta{static_cast<std::uint32_t>(schedule.steps), schedule.beta_min, schedule.beta_max};
      break;
    }
    default:
      throw ValidationError("train_model: method must be fm or ddpm");
  }
  nn::Checkpoint ckpt{method, std::move(result->model), result->optimizer.config, result->optimizer.step, meta};
  return {std::move(ckpt), std::move(result->trace)};
}

std::vector<MultiLeadSignal> generate(const nn::Checkpoint& ckpt, const std::vector<ConditionVector>& conditions,
                                      std::size_t nfe, std::uint64_t seed, Integrator integrator) {
  const auto& spec = ckpt.model.spec();
  for (const auto& c : conditions) {
    if (c.dim() != spec.condition_dim) {
      throw ValidationError(fmt::format("condition '{}' has width {}, checkpoint expects {}", c.to_string(),
                                        c.dim(), spec.condition_dim));
    }
  }
  switch (ckpt.method) {
    case nn::MethodTag::kFlowMatching:
      return batch_generate(ckpt.model, spec.shape, conditions, nfe, seed, integrator);
    case nn::MethodTag::kDiffusion: {
      const NoiseSchedule sched = schedule_of(ckpt);
      if (nfe == 0 || nfe > sched.steps) {
        throw ValidationError(fmt::format("nfe {} outside [1, {}] for a diffusion checkpoint", nfe, sched.steps));
      }
      return ddpm_batch_generate(ckpt.model, spec.shape, conditions, sched, nfe, seed);
    }
    default:
      throw ValidationError("checkpoint has no method tag");
  }
}

void cmd_synth_data(const SynthSpec& spec, const std::filesystem::path& out) {
  save_dataset(synth_dataset(spec), out);
}

nn::Checkpoint cmd_train(const TrainCommand& cmd) {
  const LabeledDataset data = load_dataset(cmd.data);
  nn::ModelSpec spec;
  spec.shape = data.shape();
  spec.condition_dim = data.condition_dim();
  spec.time_embed_dim = cmd.time_embed_dim;
  spec.hidden_sizes = cmd.hidden_sizes;
  TrainedModel trained = train_model(cmd.method, data, spec, cmd.init_seed, cmd.options, cmd.schedule);
  nn::save_model(trained.checkpoint, cmd.out);
  if (cmd.trace_csv) {
    std::ofstream out(*cmd.trace_csv);
    if (!out) throw IoError(fmt::format("cannot write '{}'", cmd.trace_csv->string()));
    write_loss_trace_csv(out, trained.trace);
  }
  return std::move(trained.checkpoint);
}

LabeledDataset cmd_sample(const SampleCommand& cmd) {
  if (cmd.n == 0) throw ValidationError("sample: n must be positive");
  if (cmd.nfe == 0) throw ValidationError("sample: nfe must be positive");
  const nn::Checkpoint ckpt = nn::load_model(cmd.checkpoint);
  if (ckpt.method != cmd.method) {
    throw ValidationError(fmt::format("checkpoint '{}' holds a {} model, requested method is {}",
                                      cmd.checkpoint.string(), nn::to_string(ckpt.method),
                                      nn::to_string(cmd.method)));
  }
  const std::size_t width = ckpt.model.spec().condition_dim;
  if (cmd.condition.dim() != width) {
    throw ValidationError(fmt::format("condition '{}' has width {}, checkpoint expects {}",
                                      cmd.condition.to_string(), cmd.condition.dim(), width));
  }
  std::vector<ConditionVector> conditions(cmd.n, cmd.condition);
  auto signals = generate(ckpt, conditions, cmd.nfe, cmd.seed, cmd.integrator);
  LabeledDataset ds(std::move(signals), std::move(conditions));
  save_dataset(ds, cmd.out);
  return ds;
}

metrics::MetricReport cmd_evaluate(const std::filesystem::path& real, const std::filesystem::path& gen,
                                   const metrics::MetricOptions& opts,
                                   const std::optional<std::filesystem::path>& json_out) {
  const LabeledDataset r = load_dataset(real);
  const LabeledDataset g = load_dataset(gen);
  if (r.shape() != g.shape()) {
    throw ValidationError(fmt::format("shape mismatch: real '{}' is {}, generated '{}' is {}", real.string(),
                                      to_string(r.shape()), gen.string(), to_string(g.shape())));
  }
  metrics::MetricReport report = metrics::evaluate_all(r.signals(), g.signals(), opts);
  if (json_out) {
    std::ofstream out(*json_out);
    if (!out) throw IoError(fmt::format("cannot write '{}'", json_out->string()));
    out << metrics::to_json(report).dump(2) << '\n';
    if (!out) throw IoError(fmt::format("write failed for '{}'", json_out->string()));
  }
  return report;
}

LabeledDataset cmd_import_csv(const std::vector<std::filesystem::path>& files, double sample_rate_hz,
                              const ConditionVector& condition, const std::filesystem::path& out) {
  LabeledDataset ds = import_csv(files, sample_rate_hz, condition);
  save_dataset(ds, out);
  return ds;
}

}  // namespace flowgen::harness
