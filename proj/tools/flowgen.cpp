// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

// flowgen command-line front end.

#include "flowgen/error.hpp"
#include "flowgen/harness/commands.hpp"
#include "flowgen/harness/experiment.hpp"
#include "flowgen/harness/svg_plot.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace flowgen;
namespace fs = std::filesystem;

metrics::MetricOptions metric_options(const std::string& local, const std::string& pairing, std::uint64_t seed,
                                      std::size_t segment, double overlap, const std::string& window,
                                      const std::string& kernel, double sigma) {
  metrics::MetricOptions o;
  o.dtw_local = metrics::parse_local_distance(local);
  o.dtw_pairing = metrics::parse_pairing(pairing);
  o.seed = seed;
  o.welch.segment_len = segment;
  o.welch.overlap_frac = overlap;
  o.welch.window = metrics::parse_window(window);
  o.kernel.kind = metrics::parse_kernel(kernel);
  if (sigma > 0.0) o.kernel.sigma = sigma;
  return o;
}

int run(int argc, char** argv) {
  CLI::App app{"flowgen: flow matching and diffusion generators for multichannel time series"};
  app.require_subcommand(1);

  // synth-data
  SynthSpec synth;
  synth.channels = 2;
  synth.samples = 64;
  synth.sample_rate_hz = 32.0;
  synth.condition_dim = 4;
  synth.n_signals = 256;
  fs::path synth_out;
  auto* synth_cmd = app.add_subcommand("synth-data", "Write a synthetic labeled dataset");
  synth_cmd->add_option("-o,--out", synth_out, "Output dataset file")->required();
  synth_cmd->add_option("-n,--signals", synth.n_signals, "Number of signals");
  synth_cmd->add_option("--channels", synth.channels, "Channels per signal");
  synth_cmd->add_option("--samples", synth.samples, "Samples per channel");
  synth_cmd->add_option("--rate", synth.sample_rate_hz, "Sample rate in Hz");
  synth_cmd->add_option("--condition-dim", synth.condition_dim, "Width of the binary condition vector");
  synth_cmd->add_option("--noise", synth.noise_std, "Additive noise standard deviation");
  synth_cmd->add_option("--waves", synth.waves_per_beat, "Waves per beat (1-3)");
  synth_cmd->add_option("--seed", synth.rng_seed, "Random seed")->required();

  // train
  harness::TrainCommand train;
  std::string train_method;
  std::string train_trace;
  auto* train_cmd = app.add_subcommand("train", "Train a generator and write a checkpoint");
  train_cmd->add_option("--method", train_method, "fm or ddpm")->required()->check(CLI::IsMember({"fm", "ddpm"}));
  train_cmd->add_option("-d,--data", train.data, "Training dataset file")->required();
  train_cmd->add_option("-o,--out", train.out, "Checkpoint file")->required();
  train_cmd->add_option("--trace", train_trace, "Loss trace CSV");
  train_cmd->add_option("--steps", train.options.steps, "Optimizer steps")->required();
  train_cmd->add_option("--batch-size", train.options.batch_size, "Batch size");
  train_cmd->add_option("--lr", train.options.learning_rate, "Adam learning rate");
  train_cmd->add_option("--log-every", train.options.log_every, "Trace row interval");
  train_cmd->add_option("--seed", train.options.seed, "Batch sampling seed")->required();
  train_cmd->add_option("--init-seed", train.init_seed, "Weight initialization seed");
  train_cmd->add_option("--hidden", train.hidden_sizes, "Hidden layer widths")->delimiter(',');
  train_cmd->add_option("--time-embed", train.time_embed_dim, "Time embedding width");
  train_cmd->add_option("--T", train.schedule.steps, "Diffusion steps");
  train_cmd->add_option("--beta-min", train.schedule.beta_min, "First beta");
  train_cmd->add_option("--beta-max", train.schedule.beta_max, "Last beta");

  // sample
  harness::SampleCommand sample;
  std::string sample_method;
  std::string sample_condition;
  std::string sample_integrator = "euler";
  auto* sample_cmd = app.add_subcommand("sample", "Generate signals from a checkpoint");
  sample_cmd->add_option("-c,--checkpoint", sample.checkpoint, "Checkpoint file")->required();
  sample_cmd->add_option("--method", sample_method, "fm or ddpm")->required()->check(CLI::IsMember({"fm", "ddpm"}));
  sample_cmd->add_option("--nfe", sample.nfe, "Network evaluations per signal")->required();
  sample_cmd->add_option("-n,--count", sample.n, "Number of signals")->required();
  sample_cmd->add_option("--condition", sample_condition, "Condition bits, e.g. 0101")->required();
  sample_cmd->add_option("--seed", sample.seed, "Noise seed")->required();
  sample_cmd->add_option("--integrator", sample_integrator, "euler or midpoint (fm only)");
  sample_cmd->add_option("-o,--out", sample.out, "Output dataset file")->required();

  // evaluate
  fs::path eval_real;
  fs::path eval_gen;
  std::string eval_json;
  std::string dtw_local = "sq_euclidean";
  std::string dtw_pairing = "index";
  std::uint64_t metric_seed = 0;
  std::size_t welch_segment = 256;
  double welch_overlap = 0.5;
  std::string welch_window = "hann";
  std::string kernel = "rbf";
  double sigma = 0.0;
  auto* eval_cmd = app.add_subcommand("evaluate", "Compare generated signals against real ones");
  eval_cmd->add_option("--real", eval_real, "Real dataset file")->required();
  eval_cmd->add_option("--gen", eval_gen, "Generated dataset file")->required();
  eval_cmd->add_option("-o,--out", eval_json, "Report JSON (stdout when omitted)");
  eval_cmd->add_option("--dtw-local", dtw_local, "sq_euclidean or abs");
  eval_cmd->add_option("--dtw-pairing", dtw_pairing, "index or best_match");
  eval_cmd->add_option("--seed", metric_seed, "Seed for pairing subsamples");
  eval_cmd->add_option("--welch-segment", welch_segment, "Welch segment length");
  eval_cmd->add_option("--welch-overlap", welch_overlap, "Welch overlap fraction");
  eval_cmd->add_option("--welch-window", welch_window, "hann or rect");
  eval_cmd->add_option("--kernel", kernel, "rbf or linear");
  eval_cmd->add_option("--sigma", sigma, "RBF bandwidth (median heuristic when omitted)");

  // run-experiment
  fs::path exp_config;
  std::string exp_out;
  bool quiet = false;
  auto* exp_cmd = app.add_subcommand("run-experiment", "Synthesize, train both methods and sweep NFE");
  exp_cmd->add_option("config", exp_config, "Experiment config JSON")->required();
  exp_cmd->add_option("-o,--out", exp_out, "Output directory (overrides the config)");
  exp_cmd->add_flag("-q,--quiet", quiet, "No progress output");

  // render-plot
  fs::path plot_csv;
  fs::path plot_svg;
  auto* plot_cmd = app.add_subcommand("render-plot", "Render a sweep CSV as SVG");
  plot_cmd->add_option("csv", plot_csv, "sweep.csv")->required();
  plot_cmd->add_option("-o,--out", plot_svg, "Output SVG")->required();

  // import-csv
  std::vector<fs::path> csv_files;
  double csv_rate = 0.0;
  std::string csv_condition;
  fs::path csv_out;
  auto* import_cmd = app.add_subcommand("import-csv", "Pack CSV signals (one per file) into a dataset");
  import_cmd->add_option("files", csv_files, "CSV files with a lead-name header")->required();
  import_cmd->add_option("--rate", csv_rate, "Sample rate in Hz")->required();
  import_cmd->add_option("--condition", csv_condition, "Condition bits for every signal")->required();
  import_cmd->add_option("-o,--out", csv_out, "Output dataset file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*synth_cmd) {
    harness::cmd_synth_data(synth, synth_out);
  } else if (*train_cmd) {
    train.method = nn::parse_method(train_method);
    if (!train_trace.empty()) train.trace_csv = train_trace;
    const auto ckpt = harness::cmd_train(train);
    std::cout << fmt::format("wrote {} ({} parameters)\n", train.out.string(), ckpt.model.parameters().count());
  } else if (*sample_cmd) {
    sample.method = nn::parse_method(sample_method);
    sample.condition = ConditionVector::parse(sample_condition);
    sample.integrator = parse_integrator(sample_integrator);
    harness::cmd_sample(sample);
  } else if (*eval_cmd) {
    const auto opts = metric_options(dtw_local, dtw_pairing, metric_seed, welch_segment, welch_overlap,
                                     welch_window, kernel, sigma);
    std::optional<fs::path> out;
    if (!eval_json.empty()) out = eval_json;
    const auto report = harness::cmd_evaluate(eval_real, eval_gen, opts, out);
    if (!out) std::cout << metrics::to_json(report).dump(2) << '\n';
  } else if (*exp_cmd) {
    std::optional<fs::path> out;
    if (!exp_out.empty()) out = exp_out;
    const auto result = harness::cmd_run_experiment(exp_config, out, quiet ? nullptr : &std::cerr);
    std::cout << result.output_dir.string() << '\n';
  } else if (*plot_cmd) {
    harness::render_sweep_plot(plot_csv, plot_svg);
  } else if (*import_cmd) {
    const auto ds = harness::cmd_import_csv(csv_files, csv_rate, ConditionVector::parse(csv_condition), csv_out);
    std::cout << fmt::format("wrote {} signals to {}\n", ds.size(), csv_out.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "flowgen: " << e.what() << '\n';
    return flowgen::exit_code_for(e);
  }
}
