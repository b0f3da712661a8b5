// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. Prints one PASS/FAIL line per criterion.
//
// Usage: flowgen_acceptance [--only N] [--expect-fail N]... [--workdir DIR]
//
// The exit status is nonzero if any criterion fails that was not listed with
// --expect-fail. Listed criteria still run and still print FAIL when they fail.

#include "flowgen/diffusion.hpp"
#include "flowgen/error.hpp"
#include "flowgen/flow_matching.hpp"
#include "flowgen/harness/config.hpp"
#include "flowgen/harness/experiment.hpp"
#include "flowgen/harness/sweep_csv.hpp"
#include "flowgen/metrics/dtw.hpp"
#include "flowgen/metrics/evaluate.hpp"
#include "flowgen/metrics/mmd.hpp"
#include "flowgen/metrics/wasserstein.hpp"
#include "flowgen/nn/mlp.hpp"
#include "flowgen/ode_sampler.hpp"
#include "flowgen/rng.hpp"
#include "flowgen/signal.hpp"
#include "flowgen/synth.hpp"

#include "oracles.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace flowgen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path g_workdir;

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> all_sequences(std::size_t max_len) {
  std::vector<std::vector<double>> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < len; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> s(len);
      std::size_t c = code;
      for (std::size_t k = 0; k < len; ++k, c /= 3) s[k] = static_cast<double>(c % 3);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> random_set(Rng& rng, std::size_t n, std::size_t dim, double shift) {
  std::vector<Eigen::VectorXd> out;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = standard_normal(rng) + shift;
    out.push_back(v);
  }
  return out;
}

Outcome metric_oracles() {
  const auto start = std::chrono::steady_clock::now();
  const auto seqs = all_sequences(6);
  std::size_t pairs = 0, dtw_bad = 0;
  for (const auto& x : seqs) {
    for (const auto& y : seqs) {
      ++pairs;
      if (metrics::dtw_distance(x, y) != oracle::exhaustive_dtw(x, y, true)) ++dtw_bad;
      if (metrics::dtw_distance(x, y, metrics::LocalDistance::kAbsolute) != oracle::exhaustive_dtw(x, y, false)) {
        ++dtw_bad;
      }
    }
  }

  Rng rng(2026);
  double mmd_err = 0.0;
  const std::size_t mmd_pairs = 60;
  for (std::size_t trial = 0; trial < mmd_pairs; ++trial) {
    const auto x = random_set(rng, 2 + uniform_index(rng, 20), 1 + uniform_index(rng, 8), 0.0);
    const auto y = random_set(rng, 2 + uniform_index(rng, 20), x.front().size(), uniform(rng, 0.0, 1.5));
    const double sigma = oracle::median_pairwise_distance(x, y);
    mmd_err = std::max(mmd_err, std::abs(metrics::mmd2(x, y) - oracle::naive_mmd2(x, y, sigma)));
    mmd_err = std::max(mmd_err, std::abs(metrics::mmd2(x, y, {metrics::KernelKind::kLinear, std::nullopt}) -
                                         oracle::naive_mmd2(x, y, 0.0, true)));
  }

  double w_err = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> a(1 + uniform_index(rng, 6)), b(1 + uniform_index(rng, 6));
    for (auto& v : a) v = uniform(rng, -3.0, 3.0);
    for (auto& v : b) v = uniform(rng, -3.0, 3.0);
    w_err = std::max(w_err, std::abs(metrics::wasserstein1_1d(a, b) - oracle::transport_w1(a, b)));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = dtw_bad == 0 && mmd_err <= 1e-10 && w_err <= 1e-9 && secs < 60.0;
  return {pass, fmt::format("dtw {} pairs x 2 distances, {} mismatches; mmd max err {:.2e} over {} pairs; "
                            "w1 max err {:.2e} over 500 pairs; {:.1f}s",
                            pairs, dtw_bad, mmd_err, mmd_pairs, w_err, secs)};
}

// ---------------------------------------------------------------------------

metrics::SignalSet synth_signals(std::size_t n, std::size_t channels, std::size_t samples, double rate,
                                 std::uint64_t seed) {
  return synth_dataset({n, channels, samples, rate, 4, seed}).signals();
}

Outcome identity_suite() {
  std::vector<metrics::SignalSet> sets = {synth_signals(16, 2, 64, 32.0, 1), synth_signals(9, 8, 200, 100.0, 2),
                                          synth_signals(5, 1, 16, 8.0, 3)};
  Rng rng(4);
  metrics::SignalSet noise;
  for (int i = 0; i < 7; ++i) {
    SignalMatrix m(3, 50);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = 4.0 * standard_normal(rng);
    noise.emplace_back(m, 25.0);
  }
  sets.push_back(noise);

  std::vector<metrics::MetricOptions> option_sets(3);
  option_sets[1].dtw_local = metrics::LocalDistance::kAbsolute;
  option_sets[1].dtw_pairing = metrics::DtwPairing::kBestMatch;
  option_sets[2].kernel = {metrics::KernelKind::kLinear, std::nullopt};
  option_sets[2].welch.window = metrics::Window::kRectangular;

  bool pass = true;
  double worst_mmd = 0.0;
  std::size_t runs = 0;
  for (const auto& s : sets) {
    for (const auto& opts : option_sets) {
      const auto r = metrics::evaluate_all(s, s, opts);
      ++runs;
      worst_mmd = std::max(worst_mmd, std::abs(r.mmd2.mean));
      for (std::size_t c = 0; c < r.channels; ++c) {
        pass = pass && r.dtw.per_channel[c] == 0.0 && r.wasserstein.per_channel[c] == 0.0 &&
               std::abs(r.mmd2.per_channel[c]) <= 1e-12 && r.spec_sim.per_channel[c] == 1.0;
      }
    }
  }
  return {pass, fmt::format("{} dataset/option combinations; worst |mmd2| {:.2e}", runs, worst_mmd)};
}

// ---------------------------------------------------------------------------

Outcome gradient_check() {
  double worst = 0.0;
  std::size_t checked = 0;
  const std::size_t models = 12;
  for (std::size_t m = 0; m < models; ++m) {
    Rng rng(300 + m);
    nn::ModelSpec spec;
    spec.shape = {1 + uniform_index(rng, 2), 2 + uniform_index(rng, 3), 10.0};
    spec.condition_dim = 1 + uniform_index(rng, 3);
    spec.time_embed_dim = 2 * (1 + uniform_index(rng, 2));
    spec.hidden_sizes.assign(1 + uniform_index(rng, 2), 0);
    for (auto& h : spec.hidden_sizes) h = 2 + uniform_index(rng, 5);
    const nn::VelocityModel model(spec, 500 + m, nn::InitMode::kRandomAll);

    nn::MseBatch b;
    const std::size_t items = 1 + uniform_index(rng, 4);
    b.inputs = Eigen::MatrixXd(spec.signal_dim(), items);
    b.targets = Eigen::MatrixXd(spec.signal_dim(), items);
    for (Eigen::Index i = 0; i < b.inputs.size(); ++i) {
      b.inputs.data()[i] = standard_normal(rng);
      b.targets.data()[i] = standard_normal(rng);
    }
    for (std::size_t i = 0; i < items; ++i) {
      std::vector<std::uint8_t> bits(spec.condition_dim);
      for (auto& bit : bits) bit = uniform01(rng) < 0.5 ? 1 : 0;
      b.conditions.emplace_back(bits);
      b.times.push_back(uniform01(rng));
    }

    const auto analytic = nn::backward(model, b).gradients;
    const auto numeric = oracle::finite_difference_gradient(
        model.parameters(), [&](const nn::Parameters& p) { return nn::mse_loss(nn::VelocityModel(spec, p), b); });
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      const double err = std::abs(analytic[k] - numeric[k]) / std::max(1.0, std::abs(numeric[k]));
      worst = std::max(worst, err);
      ++checked;
    }
  }
  return {worst < 1e-4, fmt::format("{} models, {} parameters, worst relative error {:.2e}", models, checked, worst)};
}

// ---------------------------------------------------------------------------

Outcome integrator_convergence() {
  const oracle::LambdaField decay(1, [](const Eigen::VectorXd& x, const ConditionVector&, double) {
    return (-x).eval();
  });
  const auto c = ConditionVector::parse("1");
  auto err = [&](std::size_t nfe, Integrator m) {
    return std::abs(integrate_flat(decay, Eigen::VectorXd::Ones(1), c, nfe, m)(0) - std::exp(-1.0));
  };
  const double euler = err(128, Integrator::kEuler) / err(64, Integrator::kEuler);
  const double mid = err(128, Integrator::kMidpoint) / err(64, Integrator::kMidpoint);

  oracle::CountingField counted(decay);
  bool counts_ok = true;
  for (std::size_t nfe : {1u, 2u, 7u, 10u, 64u, 128u}) {
    counted.reset();
    integrate_flat(counted, Eigen::VectorXd::Ones(1), c, nfe, Integrator::kEuler);
    counts_ok = counts_ok && counted.calls() == nfe;
    if (nfe % 2 == 0) {
      counted.reset();
      integrate_flat(counted, Eigen::VectorXd::Ones(1), c, nfe, Integrator::kMidpoint);
      counts_ok = counts_ok && counted.calls() == nfe;
    }
  }
  const auto sched = make_schedule();
  const oracle::LambdaField zero(1, [](const Eigen::VectorXd& x, const ConditionVector&, double) {
    return Eigen::VectorXd::Zero(x.size()).eval();
  });
  oracle::CountingField counted_eps(zero);
  for (std::size_t nfe : {1u, 2u, 10u, 200u}) {
    counted_eps.reset();
    Rng rng(nfe);
    ancestral_sample_flat(counted_eps, Eigen::VectorXd::Ones(1), c, sched, nfe, rng);
    counts_ok = counts_ok && counted_eps.calls() == nfe;
  }
  const bool pass = euler >= 0.45 && euler <= 0.55 && mid >= 0.2 && mid <= 0.3 && counts_ok;
  return {pass, fmt::format("euler ratio {:.4f}, midpoint ratio {:.4f}, nfe counts {}", euler, mid,
                            counts_ok ? "exact" : "WRONG")};
}

// ---------------------------------------------------------------------------

Outcome lead_algebra() {
  Rng rng(55);
  std::size_t samples = 0, iii_bad = 0, sum_bad = 0;
  double worst_ulps = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    SignalMatrix m(8, 2 + uniform_index(rng, 63));
    const double scale = std::pow(10.0, uniform(rng, -3.0, 3.0));
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = scale * uniform(rng, -1.0, 1.0);
    const MultiLeadSignal in(m, 500.0, eight_lead_names());
    const auto out = reconstruct_twelve_lead(in);
    for (std::size_t n = 0; n < in.samples(); ++n, ++samples) {
      const double i = in.data()(0, n), ii = in.data()(1, n);
      if (out.data()(2, n) != ii - i) ++iii_bad;
      const double avr = out.data()(3, n), avl = out.data()(4, n), avf = out.data()(5, n);
      // One rounding unit at the magnitude of the largest augmented lead.
      const double largest = std::max({std::abs(avr), std::abs(avl), std::abs(avf)});
      const double unit = largest == 0.0 ? 0.0 : std::nextafter(largest, INFINITY) - largest;
      const double sum = std::abs(avr + avl + avf);
      if (unit > 0.0) worst_ulps = std::max(worst_ulps, sum / unit);
      if (sum > unit) ++sum_bad;
    }
  }
  return {iii_bad == 0 && sum_bad == 0,
          fmt::format("1000 signals, {} samples; III mismatches {}; augmented sum over one unit {} (worst {:.2f} units)",
                      samples, iii_bad, sum_bad, worst_ulps)};
}

// ---------------------------------------------------------------------------

Outcome schedule_endpoints() {
  const auto s = make_schedule(200, 0.0001, 0.02);
  bool pass = s.betas.size() == 200 && s.betas[0] == 0.0001 && s.betas[199] == 0.02;
  Rng rng(66);
  std::size_t schedules = 0, rejected = 0;
  for (int trial = 0; trial < 500; ++trial, ++schedules) {
    const std::size_t T = 2 + uniform_index(rng, 1000);
    const double lo = uniform(rng, 1e-6, 0.1);
    const double hi = uniform(rng, lo * 1.0001, 0.999);
    // Independent log-space product decides whether the schedule is representable.
    double log_abar = 0.0;
    for (double b : oracle::linear_betas(T, lo, hi)) log_abar += std::log1p(-b);
    if (log_abar < std::log(std::numeric_limits<double>::min()) + 1e-6) {
      bool threw = false;
      try {
        make_schedule(T, lo, hi);
      } catch (const ContractViolation&) {
        threw = true;
      }
      pass = pass && threw;
      ++rejected;
      continue;
    }
    const auto r = make_schedule(T, lo, hi);
    pass = pass && r.betas.front() == lo && r.betas.back() == hi;
    for (std::size_t t = 0; t < T; ++t) {
      pass = pass && r.betas[t] > 0.0 && r.betas[t] < 1.0 && r.alphas[t] == 1.0 - r.betas[t] &&
             r.alpha_bars[t] > 0.0 && r.alpha_bars[t] < 1.0;
      if (t > 0) pass = pass && r.betas[t] > r.betas[t - 1] && r.alpha_bars[t] < r.alpha_bars[t - 1];
    }
  }
  return {pass, fmt::format("betas[0]={}, betas[199]={}, abar[199]={:.6f}; {} random schedules monotone, {} rejected as underflowing",
                            s.betas[0], s.betas[199], s.alpha_bars[199], schedules - rejected, rejected)};
}

// ---------------------------------------------------------------------------

harness::ExperimentConfig toy_config() {
  // Library defaults: 256 training signals, 2 channels, 64 samples, 5000 steps per method.
  return harness::parse_config({{"version", harness::kConfigVersion}, {"master_seed", 7}});
}

const harness::ExperimentResult& toy_run() {
  static const harness::ExperimentResult result = [] {
    const auto cfg = toy_config();
    std::ofstream(g_workdir / "toy.json") << harness::to_json(cfg).dump(2);
    return harness::cmd_run_experiment(g_workdir / "toy.json", g_workdir / "toy_a");
  }();
  return result;
}

Outcome toy_trend() {
  const auto cfg = toy_config();
  const auto& rows = toy_run().rows;
  auto find = [&](const std::string& m, std::size_t nfe) -> const harness::SweepRow& {
    for (const auto& r : rows) {
      if (r.method == m && r.nfe == nfe) return r;
    }
    throw std::runtime_error(fmt::format("no sweep row for {} at nfe {}", m, nfe));
  };
  const double harness::SweepRow::*fields[] = {&harness::SweepRow::dtw, &harness::SweepRow::wasserstein,
                                               &harness::SweepRow::mmd2};
  const char* names[] = {"dtw", "w1", "mmd2"};
  bool fm_ok = true;
  int ddpm_wins = 0;
  std::string detail = fmt::format("{} signals, {} steps;", cfg.dataset.n_signals, cfg.training.steps);
  for (int k = 0; k < 3; ++k) {
    const double fm = find("fm", 10).*fields[k] / find("fm", 200).*fields[k];
    const double dd = find("ddpm", 10).*fields[k] / find("ddpm", 200).*fields[k];
    fm_ok = fm_ok && fm <= 1.5;
    if (dd >= 2.0 * fm) ++ddpm_wins;
    detail += fmt::format(" {} degradation fm {:.3f} ddpm {:.3f} (ddpm nfe2 {:.3f});", names[k], fm, dd,
                          find("ddpm", 2).*fields[k] / find("ddpm", 200).*fields[k]);
  }
  detail += fmt::format(" fm <= 1.5 on all: {}; ddpm >= 2x fm on {}/3 (need 2)", fm_ok ? "yes" : "no", ddpm_wins);
  return {fm_ok && ddpm_wins >= 2, detail};
}

// ---------------------------------------------------------------------------

Outcome dual_path_loss() {
  double worst = 0.0;
  std::size_t batches = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed, ++batches) {
    const auto ds = synth_dataset({12, 2, 16, 16.0, 3, 70 + seed});
    nn::ModelSpec spec;
    spec.shape = ds.shape();
    spec.condition_dim = 3;
    spec.time_embed_dim = 4;
    spec.hidden_sizes = {12, 8};
    const nn::VelocityModel model(spec, 80 + seed, nn::InitMode::kRandomAll);
    Rng rng(90 + seed);
    const auto batch = sample_batch(ds, 1 + uniform_index(rng, 8), rng);
    const double direct = fm_loss(model, batch);
    const double generic = oracle::generic_flow_loss(model, oracle::linear_path(), batch.x0, batch.x1, batch.t, batch.c);
    worst = std::max(worst, std::abs(direct - generic));
  }
  return {worst <= 1e-12, fmt::format("{} random batches, max |difference| {:.2e}", batches, worst)};
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sweep_without_wall(const fs::path& p) {
  std::string out;
  for (const auto& r : harness::load_sweep_csv(p)) {
    out += fmt::format("{},{},{},{},{},{}\n", r.method, r.nfe, r.dtw, r.wasserstein, r.mmd2, r.spec_sim);
  }
  return out;
}

Outcome determinism() {
  toy_run();
  harness::cmd_run_experiment(g_workdir / "toy.json", g_workdir / "toy_b");
  const auto a = g_workdir / "toy_a", b = g_workdir / "toy_b";
  const bool sweep_same = sweep_without_wall(a / "sweep.csv") == sweep_without_wall(b / "sweep.csv");
  const bool svg_same = slurp(a / "figure2.svg") == slurp(b / "figure2.svg");
  return {sweep_same && svg_same, fmt::format("sweep.csv (no wall_ms) {}; figure2.svg {}",
                                              sweep_same ? "identical" : "DIFFERS", svg_same ? "identical" : "DIFFERS")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  std::set<int> only;
  g_workdir = fs::temp_directory_path() / "flowgen_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--expect-fail" || arg == "--only" || arg == "--workdir") && i + 1 < argc) {
      const std::string value = argv[++i];
      if (arg == "--expect-fail") expect_fail.insert(std::stoi(value));
      if (arg == "--only") only.insert(std::stoi(value));
      if (arg == "--workdir") g_workdir = value;
    } else {
      std::cerr << "usage: flowgen_acceptance [--only N] [--expect-fail N]... [--workdir DIR]\n";
      return 2;
    }
  }
  fs::remove_all(g_workdir);
  fs::create_directories(g_workdir);

  const std::vector<Criterion> criteria = {
      {1, "metric oracle equivalence", metric_oracles},
      {2, "identity suite", identity_suite},
      {3, "gradient correctness", gradient_check},
      {4, "integrator convergence and NFE accounting", integrator_convergence},
      {5, "lead algebra", lead_algebra},
      {6, "schedule endpoints and monotonicity", schedule_endpoints},
      {7, "toy-scale NFE degradation trend", toy_trend},
      {8, "dual-path flow matching loss", dual_path_loss},
      {9, "experiment determinism", determinism},
  };

  std::ofstream results(g_workdir / "results.txt");
  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only.count(c.id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool expected = expect_fail.count(c.id) > 0;
    const std::string line = fmt::format("criterion {} ({}): {} [{:.1f}s] {}{}\n", c.id, c.name,
                                         o.pass ? "PASS" : "FAIL", secs, o.detail,
                                         !o.pass && expected ? " (known failure)" : "");
    std::cout << line << std::flush;
    results << line << std::flush;
    if (!o.pass && !expected) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
