// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/dataset_io.hpp"
#include "flowgen/error.hpp"
#include "flowgen/synth.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace flowgen;
namespace fs = std::filesystem;

namespace {

LabeledDataset sample_dataset(std::size_t n = 3) {
  SynthSpec s;
  s.n_signals = n;
  s.channels = 3;
  s.samples = 16;
  s.sample_rate_hz = 250.0;
  s.condition_dim = 6;
  s.rng_seed = 5;
  return synth_dataset(s);
}

std::string serialize(const LabeledDataset& ds) {
  std::ostringstream out;
  write_dataset(out, ds);
  return out.str();
}

ParseErrorKind parse_kind(const std::string& bytes, std::string* message = nullptr) {
  std::istringstream in(bytes);
  try {
    read_dataset(in);
  } catch (const ParseError& e) {
    if (message != nullptr) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no parse error";
  return ParseErrorKind::kMalformed;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "flowgen_test_dataset_io";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(DatasetIo, RoundTripIsBitExact) {
  const auto ds = sample_dataset();
  const fs::path path = temp_dir() / "roundtrip.fgts";
  save_dataset(ds, path);
  const auto back = load_dataset(path);
  EXPECT_TRUE(back == ds);
  EXPECT_EQ(back.shape(), ds.shape());
  EXPECT_EQ(serialize(back), serialize(ds));
}

TEST(DatasetIo, HeaderLayout) {
  const auto bytes = serialize(sample_dataset(2));
  // magic 4 + version 2 + n 4 + channels 2 + samples 4 + rate 4 + cond 2 = 22
  const std::size_t header = 22;
  const std::size_t per_signal = 3 * 16 * 4 + 6;
  ASSERT_EQ(bytes.size(), header + 2 * per_signal);
  EXPECT_EQ(bytes.substr(0, 4), "FGTS");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 2u);
}

TEST(DatasetIo, WrongMagicIsNamed) {
  auto bytes = serialize(sample_dataset());
  bytes[0] = 'X';
  std::string msg;
  EXPECT_EQ(parse_kind(bytes, &msg), ParseErrorKind::kBadMagic);
  EXPECT_NE(msg.find("magic"), std::string::npos);
}

TEST(DatasetIo, WrongVersion) {
  auto bytes = serialize(sample_dataset());
  bytes[4] = 9;
  EXPECT_EQ(parse_kind(bytes), ParseErrorKind::kBadVersion);
}

TEST(DatasetIo, HeaderDeclaringMoreSignalsThanPayloadIsTruncation) {
  auto bytes = serialize(sample_dataset(2));
  bytes[6] = 3;  // n_signals low byte
  std::string msg;
  EXPECT_EQ(parse_kind(bytes, &msg), ParseErrorKind::kTruncated);
  EXPECT_NE(msg.find("3 signals"), std::string::npos);
  EXPECT_NE(msg.find("only 2"), std::string::npos);
}

TEST(DatasetIo, TruncatedHeader) {
  const auto bytes = serialize(sample_dataset());
  EXPECT_EQ(parse_kind(bytes.substr(0, 10)), ParseErrorKind::kTruncated);
}

TEST(DatasetIo, ShapeAndContentErrors) {
  auto zero_channels = serialize(sample_dataset());
  zero_channels[10] = 0;
  EXPECT_EQ(parse_kind(zero_channels), ParseErrorKind::kShapeMismatch);

  auto trailing = serialize(sample_dataset());
  trailing.push_back('\0');
  EXPECT_EQ(parse_kind(trailing), ParseErrorKind::kShapeMismatch);

  auto bad_bit = serialize(sample_dataset(1));
  bad_bit.back() = 7;
  EXPECT_EQ(parse_kind(bad_bit), ParseErrorKind::kMalformed);
}

TEST(DatasetIo, MissingFileIsIoError) {
  EXPECT_THROW(load_dataset(temp_dir() / "does_not_exist.fgts"), IoError);
}

TEST(CsvImport, ReadsLeadNamesAndColumns) {
  const fs::path a = temp_dir() / "a.csv";
  const fs::path b = temp_dir() / "b.csv";
  std::ofstream(a) << "I,II\n0.5,1\n-0.25,2\n0,3\n";
  std::ofstream(b) << "I,II\r\n1,1\r\n2,2\r\n3,3\r\n";
  const auto s = read_signal_csv(a, 100.0);
  EXPECT_EQ(s.lead_names(), (std::vector<std::string>{"I", "II"}));
  EXPECT_EQ(s.samples(), 3u);
  EXPECT_EQ(s.data()(0, 1), -0.25);
  EXPECT_EQ(s.data()(1, 2), 3.0);
  const auto ds = import_csv({a, b}, 100.0, ConditionVector::parse("01"));
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.condition(1).to_string(), "01");
}

TEST(CsvImport, ErrorsCarryLocation) {
  const fs::path bad = temp_dir() / "bad.csv";
  std::ofstream(bad) << "I,II\n1,2\n1,oops\n";
  try {
    read_signal_csv(bad, 100.0);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  const fs::path ragged = temp_dir() / "ragged.csv";
  std::ofstream(ragged) << "I,II\n1,2\n1\n";
  EXPECT_THROW(read_signal_csv(ragged, 100.0), ParseError);
}
