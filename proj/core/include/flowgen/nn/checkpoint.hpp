// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/nn/adam.hpp"
#include "flowgen/nn/mlp.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace flowgen::nn {

inline constexpr std::uint16_t kCheckpointFormatVersion = 1;

enum class MethodTag : std::uint8_t {
  kUntagged = 0,
  kFlowMatching = 1,
  kDiffusion = 2,
};

std::string to_string(MethodTag m);
/// Accepts "fm" and "ddpm".
MethodTag parse_method(const std::string& name);

/// Noise schedule parameters stored with diffusion checkpoints.
struct ScheduleMeta {
  std::uint32_t steps = 0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  bool operator==(const ScheduleMeta&) const = default;
};

struct Checkpoint {
  MethodTag method = MethodTag::kUntagged;
  VelocityModel model;
  AdamConfig optimizer;
  std::uint64_t optimizer_step = 0;
  std::optional<ScheduleMeta> schedule;
};

/// Layout (little-endian):
///   "FGMD" | version u16 | method u8 | layer count u16 |
///   per layer: rows u32 | cols u32 | rows*cols f64 weights (row-major) | rows f64 biases |
///   time_embed_dim u16 | condition_dim u16 |
///   channels u16 | samples u32 | sample_rate_hz f64 |
///   lr f64 | beta1 f64 | beta2 f64 | epsilon f64 | optimizer step u64 |
///   schedule steps u32 (0 = none) | beta_min f64 | beta_max f64
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::istream& in);

void save_model(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_model(const std::filesystem::path& path);

}  // namespace flowgen::nn
