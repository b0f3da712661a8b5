// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flowgen {

/// Channels x samples, row-major so that a flattened signal is channel-major.
using SignalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SignalShape {
  std::size_t channels = 0;
  std::size_t samples = 0;
  double sample_rate_hz = 0.0;

  std::size_t size() const noexcept { return channels * samples; }
  bool operator==(const SignalShape&) const = default;
};

std::string to_string(const SignalShape& shape);

/// Lead names used when none are supplied: the standard 8- and 12-lead sets,
/// otherwise "ch0", "ch1", ...
std::vector<std::string> default_lead_names(std::size_t channels);

inline const std::vector<std::string>& eight_lead_names() {
  static const std::vector<std::string> names = {"I", "II", "V1", "V2", "V3", "V4", "V5", "V6"};
  return names;
}

inline const std::vector<std::string>& twelve_lead_names() {
  static const std::vector<std::string> names = {"I",   "II",  "III", "aVR", "aVL", "aVF",
                                                  "V1",  "V2",  "V3",  "V4",  "V5",  "V6"};
  return names;
}

/// Multichannel time series. Immutable after construction.
///
/// Invariants: at least one channel and two samples, finite values, a
/// positive sample rate and one unique name per channel.
class MultiLeadSignal {
 public:
  MultiLeadSignal(SignalMatrix data, double sample_rate_hz, std::vector<std::string> lead_names);
  MultiLeadSignal(SignalMatrix data, double sample_rate_hz);

  /// Builds a signal from a flat channel-major vector.
  static MultiLeadSignal from_flat(std::span<const double> flat, const SignalShape& shape);

  const SignalMatrix& data() const noexcept { return data_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  const std::vector<std::string>& lead_names() const noexcept { return lead_names_; }
  std::size_t channels() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t samples() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  SignalShape shape() const noexcept { return {channels(), samples(), sample_rate_hz_}; }

  std::span<const double> channel(std::size_t c) const {
    return {data_.data() + c * samples(), samples()};
  }
  std::span<const double> flat() const noexcept {
    return {data_.data(), static_cast<std::size_t>(data_.size())};
  }
  Eigen::VectorXd flat_vector() const;

  bool operator==(const MultiLeadSignal& other) const;

 private:
  SignalMatrix data_;
  double sample_rate_hz_;
  std::vector<std::string> lead_names_;
};

/// Binary label vector.
class ConditionVector {
 public:
  ConditionVector() = default;
  explicit ConditionVector(std::vector<std::uint8_t> bits);
  static ConditionVector zeros(std::size_t dim);
  /// Parses a string of '0'/'1' characters, e.g. "0101".
  static ConditionVector parse(const std::string& text);

  std::size_t dim() const noexcept { return bits_.size(); }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::uint8_t operator[](std::size_t i) const { return bits_.at(i); }
  std::size_t active_count() const noexcept;
  std::string to_string() const;

  bool operator==(const ConditionVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Signals with one condition each; all signals share a shape and all
/// conditions share a width.
class LabeledDataset {
 public:
  LabeledDataset(std::vector<MultiLeadSignal> signals, std::vector<ConditionVector> conditions);

  std::size_t size() const noexcept { return signals_.size(); }
  bool empty() const noexcept { return signals_.empty(); }
  const std::vector<MultiLeadSignal>& signals() const noexcept { return signals_; }
  const std::vector<ConditionVector>& conditions() const noexcept { return conditions_; }
  const MultiLeadSignal& signal(std::size_t i) const { return signals_.at(i); }
  const ConditionVector& condition(std::size_t i) const { return conditions_.at(i); }
  SignalShape shape() const;
  std::size_t condition_dim() const;

  bool operator==(const LabeledDataset& other) const;

 private:
  std::vector<MultiLeadSignal> signals_;
  std::vector<ConditionVector> conditions_;
};

/// Expands {I, II, V1..V6} to the 12-lead set {I, II, III, aVR, aVL, aVF, V1..V6}
/// using III = II - I, aVL = (I - III)/2, aVF = (II + III)/2, aVR = -(I + II)/2.
MultiLeadSignal reconstruct_twelve_lead(const MultiLeadSignal& eight);

/// Zero mean per channel; unit population standard deviation where the
/// channel's std exceeds 1e-12 (degenerate channels are only centered).
MultiLeadSignal normalize_per_channel(const MultiLeadSignal& signal);

}  // namespace flowgen
