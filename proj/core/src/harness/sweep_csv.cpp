// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/harness/sweep_csv.hpp"

#include "flowgen/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace flowgen::harness {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError(ParseErrorKind::kMalformed, fmt::format("sweep csv line {}: {}", line_no, what));
}

double to_double(const std::string& text, std::size_t line_no, const char* column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(line_no, fmt::format("column '{}' is not a number: '{}'", column, text));
  }
  return v;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{:.3f}\n", r.method, r.nfe, r.dtw, r.wasserstein, r.mmd2,
                       r.spec_sim, r.wall_ms);
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(ParseErrorKind::kTruncated, "sweep csv is empty");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepCsvHeader) {
    fail(line_no, fmt::format("expected header '{}'", kSweepCsvHeader));
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) fail(line_no, fmt::format("expected 7 fields, found {}", f.size()));
    SweepRow r;
    r.method = f[0];
    if (r.method.empty()) fail(line_no, "empty method");
    const auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), r.nfe);
    if (ec != std::errc() || ptr != f[1].data() + f[1].size() || r.nfe == 0) {
      fail(line_no, fmt::format("column 'nfe' is not a positive integer: '{}'", f[1]));
    }
    r.dtw = to_double(f[2], line_no, "dtw");
    r.wasserstein = to_double(f[3], line_no, "wasserstein");
    r.mmd2 = to_double(f[4], line_no, "mmd2");
    r.spec_sim = to_double(f[5], line_no, "spec_sim");
    r.wall_ms = to_double(f[6], line_no, "wall_ms");
    for (double v : {r.dtw, r.wasserstein, r.mmd2, r.spec_sim, r.wall_ms}) {
      if (!std::isfinite(v)) fail(line_no, "non-finite value");
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError(ParseErrorKind::kTruncated, "sweep csv has no data rows");
  return rows;
}

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  write_sweep_csv(out, rows);
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

std::vector<SweepRow> load_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return read_sweep_csv(in);
}

}  // namespace flowgen::harness
