// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/harness/config.hpp"

#include "flowgen/error.hpp"
#include "flowgen/rng.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace flowgen::harness {
namespace {

using nlohmann::json;

// Literals built in code arrive as signed integers, parsed text as unsigned.
bool is_non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

// Collects every problem so that one run reports all offending fields.
class Reader {
 public:
  void error(const std::string& field, const std::string& message) {
    errors_.push_back(fmt::format("{}: {}", field, message));
  }

  // Rejects keys outside `allowed`; returns false when `j` is not an object.
  bool object(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      error(where.empty() ? "<root>" : where, "must be an object");
      return false;
    }
    std::set<std::string> keys;
    for (const char* k : allowed) keys.insert(k);
    for (const auto& item : j.items()) {
      if (keys.count(item.key()) == 0) error(path(where, item.key()), "unknown key");
    }
    return true;
  }

  template <typename T>
  void get(const json& j, const std::string& where, const char* key, T& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    const std::string field = path(where, key);
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
      if (!is_non_negative_integer(v)) {
        error(field, "must be a non-negative integer");
        return;
      }
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) {
        error(field, "must be an integer");
        return;
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) {
        error(field, "must be a number");
        return;
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) {
        error(field, "must be a string");
        return;
      }
    }
    out = v.get<T>();
  }

  void get_sizes(const json& j, const std::string& where, const char* key, std::vector<std::size_t>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    const std::string field = path(where, key);
    if (!v.is_array()) {
      error(field, "must be an array of positive integers");
      return;
    }
    std::vector<std::size_t> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_non_negative_integer(v[i])) {
        error(fmt::format("{}[{}]", field, i), "must be a non-negative integer");
        continue;
      }
      values.push_back(v[i].get<std::size_t>());
    }
    out = std::move(values);
  }

  template <typename Parse, typename T>
  void get_enum(const json& j, const std::string& where, const char* key, Parse parse, T& out) {
    std::string name;
    if (!j.contains(key)) return;
    get(j, where, key, name);
    if (!j.at(key).is_string()) return;
    try {
      out = parse(name);
    } catch (const ValidationError& e) {
      error(path(where, key), e.what());
    }
  }

  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string path(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
  }
  std::vector<std::string> errors_;
};

}  // namespace

ExperimentSeeds experiment_seeds(std::uint64_t master) {
  return {derive_seed(master, "data.train"), derive_seed(master, "data.eval"),
          derive_seed(master, "model.init"), derive_seed(master, "train.fm"),
          derive_seed(master, "train.ddpm"), derive_seed(master, "sample"),
          derive_seed(master, "metrics")};
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  Reader r;
  if (!r.object(j, "", {"version", "master_seed", "output_dir", "dataset", "model", "training",
                        "schedule", "nfe_list", "integrator", "metrics"})) {
    throw ValidationError("invalid config: root must be a JSON object");
  }

  if (!j.contains("version")) {
    r.error("version", "required");
  } else {
    r.get(j, "", "version", cfg.version);
    if (j.at("version").is_number_integer() && cfg.version != kConfigVersion) {
      r.error("version", fmt::format("unsupported version {} (expected {})", cfg.version, kConfigVersion));
    }
  }
  if (!j.contains("master_seed")) r.error("master_seed", "required");
  r.get(j, "", "master_seed", cfg.master_seed);
  if (j.contains("output_dir")) {
    std::string dir;
    r.get(j, "", "output_dir", dir);
    if (j.at("output_dir").is_string()) cfg.output_dir = dir;
  }

  if (j.contains("dataset") && r.object(j.at("dataset"), "dataset",
                                        {"n_signals", "eval_signals", "channels", "samples",
                                         "sample_rate_hz", "condition_dim", "noise_std", "waves_per_beat"})) {
    const auto& d = j.at("dataset");
    auto& c = cfg.dataset;
    r.get(d, "dataset", "n_signals", c.n_signals);
    r.get(d, "dataset", "eval_signals", c.eval_signals);
    r.get(d, "dataset", "channels", c.channels);
    r.get(d, "dataset", "samples", c.samples);
    r.get(d, "dataset", "sample_rate_hz", c.sample_rate_hz);
    r.get(d, "dataset", "condition_dim", c.condition_dim);
    r.get(d, "dataset", "noise_std", c.noise_std);
    r.get(d, "dataset", "waves_per_beat", c.waves_per_beat);
  }
  if (j.contains("model") && r.object(j.at("model"), "model", {"hidden_sizes", "time_embed_dim"})) {
    r.get_sizes(j.at("model"), "model", "hidden_sizes", cfg.model.hidden_sizes);
    r.get(j.at("model"), "model", "time_embed_dim", cfg.model.time_embed_dim);
  }
  if (j.contains("training") && r.object(j.at("training"), "training",
                                         {"steps", "batch_size", "learning_rate", "log_every"})) {
    const auto& t = j.at("training");
    r.get(t, "training", "steps", cfg.training.steps);
    r.get(t, "training", "batch_size", cfg.training.batch_size);
    r.get(t, "training", "learning_rate", cfg.training.learning_rate);
    r.get(t, "training", "log_every", cfg.training.log_every);
  }
  if (j.contains("schedule") && r.object(j.at("schedule"), "schedule", {"steps", "beta_min", "beta_max"})) {
    const auto& s = j.at("schedule");
    r.get(s, "schedule", "steps", cfg.schedule.steps);
    r.get(s, "schedule", "beta_min", cfg.schedule.beta_min);
    r.get(s, "schedule", "beta_max", cfg.schedule.beta_max);
  }
  r.get_sizes(j, "", "nfe_list", cfg.nfe_list);
  r.get_enum(j, "", "integrator", parse_integrator, cfg.integrator);
  if (j.contains("metrics") &&
      r.object(j.at("metrics"), "metrics",
               {"dtw_local", "dtw_pairing", "welch_segment_len", "welch_overlap", "welch_window",
                "mmd_kernel", "mmd_sigma"})) {
    const auto& m = j.at("metrics");
    auto& o = cfg.metrics;
    r.get_enum(m, "metrics", "dtw_local", metrics::parse_local_distance, o.dtw_local);
    r.get_enum(m, "metrics", "dtw_pairing", metrics::parse_pairing, o.dtw_pairing);
    r.get(m, "metrics", "welch_segment_len", o.welch.segment_len);
    r.get(m, "metrics", "welch_overlap", o.welch.overlap_frac);
    r.get_enum(m, "metrics", "welch_window", metrics::parse_window, o.welch.window);
    r.get_enum(m, "metrics", "mmd_kernel", metrics::parse_kernel, o.kernel.kind);
    if (m.contains("mmd_sigma") && !m.at("mmd_sigma").is_null()) {
      double sigma = 0.0;
      r.get(m, "metrics", "mmd_sigma", sigma);
      if (!(sigma > 0.0)) r.error("metrics.mmd_sigma", "must be positive");
      o.kernel.sigma = sigma;
    }
  }

  // Range checks.
  const auto& d = cfg.dataset;
  if (d.n_signals == 0) r.error("dataset.n_signals", "must be positive");
  if (d.eval_signals == 0) r.error("dataset.eval_signals", "must be positive");
  if (d.channels == 0 || d.channels > 65535) r.error("dataset.channels", "must be in [1, 65535]");
  if (d.samples < 8) r.error("dataset.samples", "must be at least 8");
  if (!(d.sample_rate_hz > 0.0) || !std::isfinite(d.sample_rate_hz)) {
    r.error("dataset.sample_rate_hz", "must be positive");
  }
  if (d.condition_dim == 0) r.error("dataset.condition_dim", "must be positive");
  if (!(d.noise_std >= 0.0)) r.error("dataset.noise_std", "must be non-negative");
  if (d.waves_per_beat < 1 || d.waves_per_beat > 3) r.error("dataset.waves_per_beat", "must be 1, 2 or 3");
  for (std::size_t i = 0; i < cfg.model.hidden_sizes.size(); ++i) {
    if (cfg.model.hidden_sizes[i] == 0) r.error(fmt::format("model.hidden_sizes[{}]", i), "must be positive");
  }
  if (cfg.model.time_embed_dim == 0 || cfg.model.time_embed_dim % 2 != 0) {
    r.error("model.time_embed_dim", "must be positive and even");
  }
  if (cfg.training.batch_size == 0) r.error("training.batch_size", "must be positive");
  if (!(cfg.training.learning_rate > 0.0)) r.error("training.learning_rate", "must be positive");
  if (cfg.training.log_every == 0) r.error("training.log_every", "must be positive");
  const auto& s = cfg.schedule;
  if (s.steps < 2) r.error("schedule.steps", "must be at least 2");
  if (!(s.beta_min > 0.0 && s.beta_min < s.beta_max && s.beta_max < 1.0)) {
    r.error("schedule", "need 0 < beta_min < beta_max < 1");
  }
  if (cfg.nfe_list.empty()) r.error("nfe_list", "must not be empty");
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < cfg.nfe_list.size(); ++i) {
    const std::size_t nfe = cfg.nfe_list[i];
    const std::string field = fmt::format("nfe_list[{}]", i);
    if (nfe == 0) r.error(field, "must be at least 1");
    if (nfe > s.steps) {
      r.error(field, fmt::format("{} exceeds the diffusion arm's T = {}", nfe, s.steps));
    }
    if (cfg.integrator == Integrator::kMidpoint && nfe % 2 != 0) {
      r.error(field, fmt::format("{} is odd; the midpoint integrator needs an even NFE", nfe));
    }
    if (!seen.insert(nfe).second) r.error(field, fmt::format("duplicate value {}", nfe));
  }
  const auto& w = cfg.metrics.welch;
  if (w.segment_len < 2) r.error("metrics.welch_segment_len", "must be at least 2");
  if (!(w.overlap_frac >= 0.0 && w.overlap_frac <= 0.9)) r.error("metrics.welch_overlap", "must be in [0, 0.9]");

  if (!r.errors().empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : r.errors()) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  cfg.metrics.seed = experiment_seeds(cfg.master_seed).metrics;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("config '{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  const auto& d = cfg.dataset;
  const auto& m = cfg.metrics;
  json metrics = {{"dtw_local", metrics::to_string(m.dtw_local)},
                  {"dtw_pairing", metrics::to_string(m.dtw_pairing)},
                  {"welch_segment_len", m.welch.segment_len},
                  {"welch_overlap", m.welch.overlap_frac},
                  {"welch_window", metrics::to_string(m.welch.window)},
                  {"mmd_kernel", metrics::to_string(m.kernel.kind)}};
  if (m.kernel.sigma) metrics["mmd_sigma"] = *m.kernel.sigma;
  return {{"version", cfg.version},
          {"master_seed", cfg.master_seed},
          {"output_dir", cfg.output_dir.string()},
          {"dataset",
           {{"n_signals", d.n_signals},
            {"eval_signals", d.eval_signals},
            {"channels", d.channels},
            {"samples", d.samples},
            {"sample_rate_hz", d.sample_rate_hz},
            {"condition_dim", d.condition_dim},
            {"noise_std", d.noise_std},
            {"waves_per_beat", d.waves_per_beat}}},
          {"model", {{"hidden_sizes", cfg.model.hidden_sizes}, {"time_embed_dim", cfg.model.time_embed_dim}}},
          {"training",
           {{"steps", cfg.training.steps},
            {"batch_size", cfg.training.batch_size},
            {"learning_rate", cfg.training.learning_rate},
            {"log_every", cfg.training.log_every}}},
          {"schedule",
           {{"steps", cfg.schedule.steps}, {"beta_min", cfg.schedule.beta_min}, {"beta_max", cfg.schedule.beta_max}}},
          {"nfe_list", cfg.nfe_list},
          {"integrator", to_string(cfg.integrator)},
          {"metrics", std::move(metrics)}};
}

namespace {
SynthSpec base_spec(const ExperimentConfig& cfg) {
  const auto& d = cfg.dataset;
  SynthSpec s;
  s.channels = d.channels;
  s.samples = d.samples;
  s.sample_rate_hz = d.sample_rate_hz;
  s.condition_dim = d.condition_dim;
  s.noise_std = d.noise_std;
  s.waves_per_beat = d.waves_per_beat;
  return s;
}
}  // namespace

SynthSpec train_spec(const ExperimentConfig& cfg) {
  SynthSpec s = base_spec(cfg);
  s.n_signals = cfg.dataset.n_signals;
  s.rng_seed = experiment_seeds(cfg.master_seed).train_data;
  return s;
}

SynthSpec eval_spec(const ExperimentConfig& cfg) {
  SynthSpec s = base_spec(cfg);
  s.n_signals = cfg.dataset.eval_signals;
  s.rng_seed = experiment_seeds(cfg.master_seed).eval_data;
  return s;
}

nn::ModelSpec model_spec(const ExperimentConfig& cfg) {
  nn::ModelSpec m;
  m.shape = {cfg.dataset.channels, cfg.dataset.samples,
             static_cast<double>(static_cast<float>(cfg.dataset.sample_rate_hz))};
  m.condition_dim = cfg.dataset.condition_dim;
  m.time_embed_dim = cfg.model.time_embed_dim;
  m.hidden_sizes = cfg.model.hidden_sizes;
  return m;
}

TrainOptions train_options(const ExperimentConfig& cfg, std::uint64_t seed) {
  TrainOptions o;
  o.steps = cfg.training.steps;
  o.batch_size = cfg.training.batch_size;
  o.learning_rate = cfg.training.learning_rate;
  o.log_every = cfg.training.log_every;
  o.seed = seed;
  return o;
}

}  // namespace flowgen::harness
