// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/nn/checkpoint.hpp"

#include "../binary_io.hpp"
#include "flowgen/error.hpp"

#include <array>
#include <fstream>
#include <limits>

#include <fmt/format.h>

namespace flowgen::nn {
namespace {

using detail::get_f64;
using detail::get_le;
using detail::put_f64;
using detail::put_le;

constexpr std::array<char, 4> kMagic = {'F', 'G', 'M', 'D'};
// Refuse absurd layer sizes before allocating.
constexpr std::uint64_t kMaxLayerElements = 1ULL << 28;

[[noreturn]] void truncated(const char* where) {
  throw ParseError(ParseErrorKind::kTruncated, fmt::format("checkpoint: truncated {}", where));
}

}  // namespace

std::string to_string(MethodTag m) {
  switch (m) {
    case MethodTag::kFlowMatching: return "fm";
    case MethodTag::kDiffusion: return "ddpm";
    default: return "untagged";
  }
}

MethodTag parse_method(const std::string& name) {
  if (name == "fm") return MethodTag::kFlowMatching;
  if (name == "ddpm") return MethodTag::kDiffusion;
  throw ValidationError(fmt::format("unknown method '{}' (expected fm or ddpm)", name));
}

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  const auto& spec = ckpt.model.spec();
  const auto& layers = ckpt.model.parameters().layers;
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(out, kCheckpointFormatVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(ckpt.method));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(layers.size()));
  for (const auto& l : layers) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(l.weight.rows()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(l.weight.cols()));
    for (Eigen::Index i = 0; i < l.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < l.weight.cols(); ++j) put_f64(out, l.weight(i, j));
    }
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) put_f64(out, l.bias(i));
  }
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(spec.time_embed_dim));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(spec.condition_dim));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(spec.shape.channels));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.shape.samples));
  put_f64(out, spec.shape.sample_rate_hz);
  put_f64(out, ckpt.optimizer.learning_rate);
  put_f64(out, ckpt.optimizer.beta1);
  put_f64(out, ckpt.optimizer.beta2);
  put_f64(out, ckpt.optimizer.epsilon);
  put_le<std::uint64_t>(out, ckpt.optimizer_step);
  const ScheduleMeta sched = ckpt.schedule.value_or(ScheduleMeta{});
  put_le<std::uint32_t>(out, sched.steps);
  put_f64(out, sched.beta_min);
  put_f64(out, sched.beta_max);
  if (!out) throw IoError("checkpoint: write failed");
}

Checkpoint read_checkpoint(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) truncated("header");
  if (magic != kMagic) {
    throw ParseError(ParseErrorKind::kBadMagic,
                     fmt::format("checkpoint: magic mismatch, expected 'FGMD', got '{}'",
                                 std::string(magic.data(), magic.size())));
  }
  std::uint16_t version = 0;
  if (!get_le(in, version)) truncated("header");
  if (version != kCheckpointFormatVersion) {
    throw ParseError(ParseErrorKind::kBadVersion,
                     fmt::format("checkpoint: version {} does not match supported version {}",
                                 version, kCheckpointFormatVersion));
  }
  std::uint8_t method = 0;
  std::uint16_t n_layers = 0;
  if (!get_le(in, method) || !get_le(in, n_layers)) truncated("header");
  if (method > static_cast<std::uint8_t>(MethodTag::kDiffusion)) {
    throw ParseError(ParseErrorKind::kMalformed, fmt::format("checkpoint: unknown method tag {}", method));
  }
  if (n_layers == 0) {
    throw ParseError(ParseErrorKind::kShapeMismatch, "checkpoint: zero layers declared");
  }

  Parameters params;
  for (std::uint16_t li = 0; li < n_layers; ++li) {
    std::uint32_t rows = 0, cols = 0;
    if (!get_le(in, rows) || !get_le(in, cols)) truncated("layer header");
    if (rows == 0 || cols == 0 || static_cast<std::uint64_t>(rows) * cols > kMaxLayerElements) {
      throw ParseError(ParseErrorKind::kShapeMismatch,
                       fmt::format("checkpoint: layer {} declares invalid shape {}x{}", li, rows, cols));
    }
    DenseLayer l{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (std::uint32_t i = 0; i < rows; ++i) {
      for (std::uint32_t j = 0; j < cols; ++j) {
        if (!get_f64(in, l.weight(i, j))) truncated("weights");
      }
    }
    for (std::uint32_t i = 0; i < rows; ++i) {
      if (!get_f64(in, l.bias(i))) truncated("biases");
    }
    params.layers.push_back(std::move(l));
  }

  std::uint16_t time_dim = 0, cond_dim = 0, channels = 0;
  std::uint32_t samples = 0;
  double rate = 0.0;
  AdamConfig opt;
  std::uint64_t opt_step = 0;
  ScheduleMeta sched;
  if (!get_le(in, time_dim) || !get_le(in, cond_dim) || !get_le(in, channels) ||
      !get_le(in, samples) || !get_f64(in, rate) || !get_f64(in, opt.learning_rate) ||
      !get_f64(in, opt.beta1) || !get_f64(in, opt.beta2) || !get_f64(in, opt.epsilon) ||
      !get_le(in, opt_step) || !get_le(in, sched.steps) || !get_f64(in, sched.beta_min) ||
      !get_f64(in, sched.beta_max)) {
    truncated("trailer");
  }

  ModelSpec spec;
  spec.shape = {channels, samples, rate};
  spec.condition_dim = cond_dim;
  spec.time_embed_dim = time_dim;
  spec.hidden_sizes.clear();
  for (std::size_t li = 0; li + 1 < params.layers.size(); ++li) {
    spec.hidden_sizes.push_back(static_cast<std::size_t>(params.layers[li].weight.rows()));
  }

  // Shape chain: first layer reads the full input, each layer reads the
  // previous layer's output, last layer writes the signal.
  std::size_t expected_cols = spec.input_dim();
  for (std::size_t li = 0; li < params.layers.size(); ++li) {
    const auto& l = params.layers[li];
    const bool last = li + 1 == params.layers.size();
    if (static_cast<std::size_t>(l.weight.cols()) != expected_cols ||
        (last && static_cast<std::size_t>(l.weight.rows()) != spec.signal_dim())) {
      throw ParseError(
          ParseErrorKind::kShapeMismatch,
          fmt::format("checkpoint: layer {} declares {}x{}, expected {}x{}", li, l.weight.rows(),
                      l.weight.cols(), last ? spec.signal_dim() : static_cast<std::size_t>(l.weight.rows()),
                      expected_cols));
    }
    expected_cols = static_cast<std::size_t>(l.weight.rows());
  }
  try {
    spec.validate();
    opt.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(ParseErrorKind::kMalformed, fmt::format("checkpoint: {}", e.what()));
  }

  Checkpoint ckpt{static_cast<MethodTag>(method), VelocityModel(spec, std::move(params)), opt,
                  opt_step, std::nullopt};
  if (sched.steps > 0) ckpt.schedule = sched;
  return ckpt;
}

void save_model(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_checkpoint(out, ckpt);
}

Checkpoint load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  return read_checkpoint(in);
}

}  // namespace flowgen::nn
