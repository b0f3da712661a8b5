// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/signal.hpp"

#include "flowgen/error.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

namespace flowgen {

std::string to_string(const SignalShape& shape) {
  return fmt::format("{}x{}@{}Hz", shape.channels, shape.samples, shape.sample_rate_hz);
}

std::vector<std::string> default_lead_names(std::size_t channels) {
  if (channels == 8) return eight_lead_names();
  if (channels == 12) return twelve_lead_names();
  std::vector<std::string> names;
  names.reserve(channels);
  for (std::size_t c = 0; c < channels; ++c) names.push_back(fmt::format("ch{}", c));
  return names;
}

MultiLeadSignal::MultiLeadSignal(SignalMatrix data, double sample_rate_hz,
                                 std::vector<std::string> lead_names)
    : data_(std::move(data)), sample_rate_hz_(sample_rate_hz), lead_names_(std::move(lead_names)) {
  require(data_.rows() >= 1, "MultiLeadSignal: at least one channel required");
  require(data_.cols() >= 2, "MultiLeadSignal: at least two samples required");
  require(std::isfinite(sample_rate_hz_) && sample_rate_hz_ > 0.0,
          "MultiLeadSignal: sample rate must be positive");
  require(data_.allFinite(), "MultiLeadSignal: non-finite amplitude");
  require(lead_names_.size() == channels(),
          fmt::format("MultiLeadSignal: {} lead names for {} channels", lead_names_.size(),
                      channels()));
  const std::set<std::string> unique(lead_names_.begin(), lead_names_.end());
  require(unique.size() == lead_names_.size(), "MultiLeadSignal: lead names must be unique");
}

MultiLeadSignal::MultiLeadSignal(SignalMatrix data, double sample_rate_hz)
    : MultiLeadSignal(data, sample_rate_hz, default_lead_names(static_cast<std::size_t>(data.rows()))) {}

MultiLeadSignal MultiLeadSignal::from_flat(std::span<const double> flat, const SignalShape& shape) {
  require(flat.size() == shape.size(),
          fmt::format("from_flat: {} values for shape {}", flat.size(), to_string(shape)));
  SignalMatrix m(shape.channels, shape.samples);
  std::copy(flat.begin(), flat.end(), m.data());
  return MultiLeadSignal(std::move(m), shape.sample_rate_hz);
}

Eigen::VectorXd MultiLeadSignal::flat_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(data_.data(), data_.size());
}

bool MultiLeadSignal::operator==(const MultiLeadSignal& other) const {
  return sample_rate_hz_ == other.sample_rate_hz_ && lead_names_ == other.lead_names_ &&
         data_.rows() == other.data_.rows() && data_.cols() == other.data_.cols() &&
         data_ == other.data_;
}

ConditionVector::ConditionVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  require(!bits_.empty(), "ConditionVector: dimension must be positive");
  for (auto b : bits_) require(b <= 1, "ConditionVector: entries must be 0 or 1");
}

ConditionVector ConditionVector::zeros(std::size_t dim) {
  return ConditionVector(std::vector<std::uint8_t>(dim, 0));
}

ConditionVector ConditionVector::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ValidationError(fmt::format("condition '{}' must contain only 0 and 1", text));
    }
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  if (bits.empty()) throw ValidationError("condition must not be empty");
  return ConditionVector(std::move(bits));
}

std::size_t ConditionVector::active_count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::string ConditionVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

LabeledDataset::LabeledDataset(std::vector<MultiLeadSignal> signals,
                               std::vector<ConditionVector> conditions)
    : signals_(std::move(signals)), conditions_(std::move(conditions)) {
  require(signals_.size() == conditions_.size(),
          fmt::format("LabeledDataset: {} signals but {} conditions", signals_.size(),
                      conditions_.size()));
  if (signals_.empty()) return;
  const SignalShape first = signals_.front().shape();
  const std::size_t dim = conditions_.front().dim();
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    require(signals_[i].shape() == first,
            fmt::format("LabeledDataset: signal {} has shape {}, expected {}", i,
                        to_string(signals_[i].shape()), to_string(first)));
    require(conditions_[i].dim() == dim,
            fmt::format("LabeledDataset: condition {} has width {}, expected {}", i,
                        conditions_[i].dim(), dim));
  }
}

SignalShape LabeledDataset::shape() const {
  require(!signals_.empty(), "LabeledDataset: empty dataset has no shape");
  return signals_.front().shape();
}

std::size_t LabeledDataset::condition_dim() const {
  require(!conditions_.empty(), "LabeledDataset: empty dataset has no condition width");
  return conditions_.front().dim();
}

bool LabeledDataset::operator==(const LabeledDataset& other) const {
  return signals_ == other.signals_ && conditions_ == other.conditions_;
}

MultiLeadSignal reconstruct_twelve_lead(const MultiLeadSignal& eight) {
  require(eight.channels() == 8,
          fmt::format("reconstruct_twelve_lead: expected 8 channels, got {}", eight.channels()));
  require(eight.lead_names() == eight_lead_names(),
          "reconstruct_twelve_lead: channels must be named I, II, V1..V6 in order");
  const auto& in = eight.data();
  SignalMatrix out(12, in.cols());
  for (Eigen::Index n = 0; n < in.cols(); ++n) {
    const double lead_i = in(0, n);
    const double lead_ii = in(1, n);
    const double lead_iii = lead_ii - lead_i;
    out(0, n) = lead_i;
    out(1, n) = lead_ii;
    out(2, n) = lead_iii;
    out(3, n) = -(lead_i + lead_ii) / 2.0;
    out(4, n) = (lead_i - lead_iii) / 2.0;
    out(5, n) = (lead_ii + lead_iii) / 2.0;
  }
  out.bottomRows(6) = in.bottomRows(6);
  return MultiLeadSignal(std::move(out), eight.sample_rate_hz(), twelve_lead_names());
}

MultiLeadSignal normalize_per_channel(const MultiLeadSignal& signal) {
  SignalMatrix out = signal.data();
  const double n = static_cast<double>(out.cols());
  for (Eigen::Index c = 0; c < out.rows(); ++c) {
    auto row = out.row(c);
    const double mean = row.sum() / n;
    row.array() -= mean;
    const double std = std::sqrt(row.squaredNorm() / n);
    if (std > 1e-12) row /= std;
  }
  return MultiLeadSignal(std::move(out), signal.sample_rate_hz(), signal.lead_names());
}

}  // namespace flowgen
