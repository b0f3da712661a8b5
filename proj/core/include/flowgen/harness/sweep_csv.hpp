// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace flowgen::harness {

/// One (method, NFE) point of a sweep.
struct SweepRow {
  std::string method;
  std::size_t nfe = 0;
  double dtw = 0.0;
  double wasserstein = 0.0;
  double mmd2 = 0.0;
  double spec_sim = 0.0;
  double wall_ms = 0.0;
};

inline constexpr const char* kSweepCsvHeader = "method,nfe,dtw,wasserstein,mmd2,spec_sim,wall_ms";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// Throws ParseError with the offending line number. An empty file or a
/// header-only file is an error.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> load_sweep_csv(const std::filesystem::path& path);

}  // namespace flowgen::harness
