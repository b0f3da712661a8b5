// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/harness/experiment.hpp"

#include "flowgen/dataset_io.hpp"
#include "flowgen/error.hpp"
#include "flowgen/harness/commands.hpp"
#include "flowgen/harness/svg_plot.hpp"
#include "flowgen/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace flowgen::harness {
namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

void write_trace(const fs::path& path, const std::vector<LossRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  write_loss_trace_csv(out, trace);
}

void note(std::ostream* log, const std::string& line) {
  if (log != nullptr) *log << line << std::endl;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const fs::path& output_dir, std::ostream* log) {
  const ExperimentSeeds seeds = experiment_seeds(cfg.master_seed);
  std::error_code ec;
  fs::create_directories(output_dir / "reports", ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", output_dir.string(), ec.message()));
  write_text(output_dir / "config.json", to_json(cfg).dump(2) + "\n");

  const LabeledDataset train = synth_dataset(train_spec(cfg));
  const LabeledDataset eval = synth_dataset(eval_spec(cfg));
  save_dataset(train, output_dir / "train.fgts");
  save_dataset(eval, output_dir / "eval.fgts");
  note(log, fmt::format("data: {} train, {} eval signals of shape {}", train.size(), eval.size(),
                        to_string(train.shape())));

  const nn::ModelSpec spec = model_spec(cfg);
  struct Arm {
    nn::MethodTag method;
    std::uint64_t train_seed;
  };
  const std::vector<Arm> arms = {{nn::MethodTag::kFlowMatching, seeds.fm_training},
                                 {nn::MethodTag::kDiffusion, seeds.ddpm_training}};
  std::vector<nn::Checkpoint> checkpoints;
  for (const auto& arm : arms) {
    const std::string name = nn::to_string(arm.method);
    const auto t0 = std::chrono::steady_clock::now();
    TrainedModel trained =
        train_model(arm.method, train, spec, seeds.model_init, train_options(cfg, arm.train_seed), cfg.schedule);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nn::save_model(trained.checkpoint, output_dir / (name + ".ckpt"));
    write_trace(output_dir / (name + "_loss.csv"), trained.trace);
    note(log, fmt::format("{}: trained {} steps in {:.1f} s, final loss {:.5f}", name, cfg.training.steps, secs,
                          trained.trace.empty() ? 0.0 : trained.trace.back().loss));
    checkpoints.push_back(std::move(trained.checkpoint));
  }

  const std::size_t points = arms.size() * cfg.nfe_list.size();
  std::vector<SweepRow> rows(points);
  std::vector<metrics::MetricReport> reports(points);
  parallel_for(points, [&](std::size_t p) {
    const std::size_t a = p / cfg.nfe_list.size();
    const std::size_t nfe = cfg.nfe_list[p % cfg.nfe_list.size()];
    const auto t0 = std::chrono::steady_clock::now();
    const auto gen = generate(checkpoints[a], eval.conditions(), nfe, seeds.sampling, cfg.integrator);
    const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    reports[p] = metrics::evaluate_all(eval.signals(), gen, cfg.metrics);
    const auto& r = reports[p];
    rows[p] = {nn::to_string(arms[a].method), nfe, r.dtw.mean, r.wasserstein.mean, r.mmd2.mean, r.spec_sim.mean,
               wall_ms};
    write_text(output_dir / "reports" / fmt::format("{}_nfe{}.json", rows[p].method, nfe),
               metrics::to_json(r).dump(2) + "\n");
  });
  for (const auto& r : rows) {
    note(log, fmt::format("{:>4} nfe={:<4} dtw={:.4f} w1={:.4f} mmd2={:.6f} spec_sim={:.4f}", r.method, r.nfe,
                          r.dtw, r.wasserstein, r.mmd2, r.spec_sim));
  }

  save_sweep_csv(rows, output_dir / "sweep.csv");

  const std::size_t max_nfe = *std::max_element(cfg.nfe_list.begin(), cfg.nfe_list.end());
  std::string table = std::string(kTable1CsvHeader) + "\n";
  for (const auto& r : rows) {
    if (r.nfe != max_nfe) continue;
    table += fmt::format("{},{},{},{},{},{}\n", r.method, r.nfe, r.mmd2, r.dtw, r.wasserstein, r.spec_sim);
  }
  write_text(output_dir / "table1.csv", table);
  write_text(output_dir / "figure2.svg", render_sweep_svg(rows));
  return {output_dir, std::move(rows), std::move(reports)};
}

ExperimentResult cmd_run_experiment(const fs::path& config, const std::optional<fs::path>& output_dir,
                                    std::ostream* log) {
  const ExperimentConfig cfg = load_config(config);
  return run_experiment(cfg, output_dir.value_or(cfg.output_dir), log);
}

}  // namespace flowgen::harness
