// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace flowgen {

inline constexpr std::uint16_t kDatasetFormatVersion = 1;

/// Binary dataset layout (little-endian):
///
///   "FGTS" | version u16 | n_signals u32 | channels u16 | samples u32 |
///   sample_rate_hz f32 | condition_dim u16 |
///   per signal: channels*samples f32 (row-major), condition_dim bytes in {0,1}
///
/// Amplitudes are narrowed to f32; values already representable in f32
/// (everything produced by synth_dataset) round-trip exactly. Lead names are
/// not stored and come back as default_lead_names(channels).
void write_dataset(std::ostream& out, const LabeledDataset& ds);
LabeledDataset read_dataset(std::istream& in);

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

/// Reads one signal per CSV file: a header row of lead names followed by one
/// row per sample, one column per channel.
MultiLeadSignal read_signal_csv(const std::filesystem::path& path, double sample_rate_hz);

LabeledDataset import_csv(const std::vector<std::filesystem::path>& files, double sample_rate_hz,
                          const ConditionVector& condition);

}  // namespace flowgen
