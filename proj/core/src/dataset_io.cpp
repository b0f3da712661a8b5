// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/dataset_io.hpp"

#include "flowgen/error.hpp"
#include "binary_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

namespace flowgen {
namespace {

constexpr std::array<char, 4> kMagic = {'F', 'G', 'T', 'S'};

using detail::get_f32;
using detail::get_le;
using detail::put_f32;
using detail::put_le;

[[noreturn]] void truncated_header() {
  throw ParseError(ParseErrorKind::kTruncated, "dataset: truncated header");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_dataset(std::ostream& out, const LabeledDataset& ds) {
  require(!ds.empty(), "save_dataset: dataset is empty");
  const SignalShape shape = ds.shape();
  require(shape.channels <= std::numeric_limits<std::uint16_t>::max(),
          "save_dataset: too many channels for the format");
  require(ds.condition_dim() <= std::numeric_limits<std::uint16_t>::max(),
          "save_dataset: condition width too large for the format");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(out, kDatasetFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.size()));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(shape.channels));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(shape.samples));
  put_f32(out, static_cast<float>(shape.sample_rate_hz));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(ds.condition_dim()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.signal(i).flat()) put_f32(out, static_cast<float>(v));
    const auto& bits = ds.condition(i).bits();
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
  }
  if (!out) throw IoError("save_dataset: write failed");
}

LabeledDataset read_dataset(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) truncated_header();
  if (magic != kMagic) {
    throw ParseError(ParseErrorKind::kBadMagic,
                     fmt::format("dataset: magic mismatch, expected 'FGTS', got '{}'",
                                 std::string(magic.data(), magic.size())));
  }
  std::uint16_t version = 0, channels = 0, condition_dim = 0;
  std::uint32_t n_signals = 0, samples = 0;
  float rate = 0.0f;
  if (!get_le(in, version)) truncated_header();
  if (version != kDatasetFormatVersion) {
    throw ParseError(ParseErrorKind::kBadVersion,
                     fmt::format("dataset: unsupported format version {} (expected {})", version,
                                 kDatasetFormatVersion));
  }
  if (!get_le(in, n_signals) || !get_le(in, channels) || !get_le(in, samples) ||
      !get_f32(in, rate) || !get_le(in, condition_dim)) {
    truncated_header();
  }
  if (n_signals == 0 || channels == 0 || samples < 2 || condition_dim == 0 ||
      !std::isfinite(rate) || rate <= 0.0f) {
    throw ParseError(ParseErrorKind::kShapeMismatch,
                     fmt::format("dataset: invalid header shape (signals={}, channels={}, "
                                 "samples={}, rate={}, condition_dim={})",
                                 n_signals, channels, samples, rate, condition_dim));
  }

  const SignalShape shape{channels, samples, static_cast<double>(rate)};
  std::vector<MultiLeadSignal> signals;
  std::vector<ConditionVector> conditions;
  std::vector<double> flat(shape.size());
  std::vector<std::uint8_t> bits(condition_dim);
  for (std::uint32_t i = 0; i < n_signals; ++i) {
    for (auto& v : flat) {
      float f = 0.0f;
      if (!get_f32(in, f)) {
        throw ParseError(ParseErrorKind::kTruncated,
                         fmt::format("dataset: payload truncated, header declares {} signals "
                                     "but only {} are complete",
                                     n_signals, i));
      }
      if (!std::isfinite(f)) {
        throw ParseError(ParseErrorKind::kMalformed,
                         fmt::format("dataset: non-finite amplitude in signal {}", i));
      }
      v = static_cast<double>(f);
    }
    if (!in.read(reinterpret_cast<char*>(bits.data()), condition_dim)) {
      throw ParseError(ParseErrorKind::kTruncated,
                       fmt::format("dataset: payload truncated, header declares {} signals "
                                   "but only {} are complete",
                                   n_signals, i));
    }
    for (auto b : bits) {
      if (b > 1) {
        throw ParseError(ParseErrorKind::kMalformed,
                         fmt::format("dataset: condition byte {} of signal {} is not 0/1", b, i));
      }
    }
    signals.push_back(MultiLeadSignal::from_flat(flat, shape));
    conditions.emplace_back(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError(ParseErrorKind::kShapeMismatch,
                     "dataset: trailing bytes after the declared payload");
  }
  return LabeledDataset(std::move(signals), std::move(conditions));
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_dataset(out, ds);
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  return read_dataset(in);
}

MultiLeadSignal read_signal_csv(const std::filesystem::path& path, double sample_rate_hz) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(ParseErrorKind::kMalformed, fmt::format("{}:1: missing header row", path.string()));
  }
  const auto names = split_csv_line(line);
  for (const auto& n : names) {
    if (n.empty()) {
      throw ParseError(ParseErrorKind::kMalformed, fmt::format("{}:1: empty lead name", path.string()));
    }
  }
  std::vector<std::vector<double>> columns(names.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != names.size()) {
      throw ParseError(ParseErrorKind::kShapeMismatch,
                       fmt::format("{}:{}: expected {} columns, got {}", path.string(), line_no,
                                   names.size(), fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      try {
        std::size_t used = 0;
        columns[c].push_back(std::stod(fields[c], &used));
        if (used != fields[c].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::kMalformed,
                         fmt::format("{}:{}: cannot parse '{}' as a number", path.string(), line_no,
                                     fields[c]));
      }
    }
  }
  const std::size_t samples = columns.empty() ? 0 : columns.front().size();
  if (samples < 2) {
    throw ParseError(ParseErrorKind::kShapeMismatch,
                     fmt::format("{}: at least two sample rows required", path.string()));
  }
  SignalMatrix m(names.size(), samples);
  for (std::size_t c = 0; c < names.size(); ++c) {
    for (std::size_t n = 0; n < samples; ++n) m(c, n) = columns[c][n];
  }
  return MultiLeadSignal(std::move(m), sample_rate_hz, names);
}

LabeledDataset import_csv(const std::vector<std::filesystem::path>& files, double sample_rate_hz,
                          const ConditionVector& condition) {
  require(!files.empty(), "import_csv: no input files");
  std::vector<MultiLeadSignal> signals;
  std::vector<ConditionVector> conditions;
  for (const auto& f : files) {
    signals.push_back(read_signal_csv(f, sample_rate_hz));
    conditions.push_back(condition);
  }
  return LabeledDataset(std::move(signals), std::move(conditions));
}

}  // namespace flowgen
