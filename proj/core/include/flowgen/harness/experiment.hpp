// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/harness/config.hpp"
#include "flowgen/harness/sweep_csv.hpp"
#include "flowgen/metrics/evaluate.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace flowgen::harness {

struct ExperimentResult {
  std::filesystem::path output_dir;
  /// Flow rows first, then diffusion rows, each in nfe_list order.
  std::vector<SweepRow> rows;
  std::vector<metrics::MetricReport> reports;
};

/// Output layout:
///   config.json, train.fgts, eval.fgts, fm.ckpt, ddpm.ckpt,
///   fm_loss.csv, ddpm_loss.csv, reports/{fm,ddpm}_nfe{k}.json,
///   sweep.csv, table1.csv, figure2.svg
///
/// Both generators start from the same initial weights, and every sweep
/// point starts from the same noise draws, so the methods differ only in
/// training objective and sampler. `log` receives progress lines when set.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& output_dir,
                                std::ostream* log = nullptr);

/// load_config + run_experiment; `output_dir` overrides the configured one.
ExperimentResult cmd_run_experiment(const std::filesystem::path& config,
                                    const std::optional<std::filesystem::path>& output_dir = std::nullopt,
                                    std::ostream* log = nullptr);

inline constexpr const char* kTable1CsvHeader = "method,nfe,mmd2,dtw,wasserstein,spec_sim";

}  // namespace flowgen::harness
