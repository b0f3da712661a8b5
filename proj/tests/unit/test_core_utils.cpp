// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/error.hpp"
#include "flowgen/parallel.hpp"
#include "flowgen/rng.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <set>
#include <vector>

using namespace flowgen;

TEST(DeriveSeed, DeterministicAndSensitiveToEveryInput) {
  EXPECT_EQ(derive_seed(1, "a", 0), derive_seed(1, "a", 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m : {0ull, 1ull, 2ull})
    for (const char* n : {"a", "b", "train.fm"})
      for (std::uint64_t i : {0ull, 1ull, 7ull}) seen.insert(derive_seed(m, n, i));
  EXPECT_EQ(seen.size(), 27u);
}

TEST(Splitmix, KnownValue) {
  // Reference value of the splitmix64 finalizer applied to 0 + golden gamma.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(ExitCodes, MapByErrorKind) {
  EXPECT_EQ(exit_code_for(ValidationError("x")), 2);
  EXPECT_EQ(exit_code_for(ContractViolation("x")), 2);
  EXPECT_EQ(exit_code_for(IoError("x")), 3);
  EXPECT_EQ(exit_code_for(ParseError(ParseErrorKind::kBadMagic, "x")), 3);
  EXPECT_EQ(exit_code_for(NumericError("x")), 4);
}

TEST(Require, ThrowsContractViolation) {
  EXPECT_NO_THROW(require(true, "ok"));
  EXPECT_THROW(require(false, "bad"), ContractViolation);
}

TEST(ParallelFor, VisitsEachIndexOnce) {
  setenv("FLOWGEN_THREADS", "4", 1);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  unsetenv("FLOWGEN_THREADS");
}

TEST(ParallelFor, NestedCallsComplete) {
  setenv("FLOWGEN_THREADS", "3", 1);
  std::vector<std::atomic<int>> hits(60);
  parallel_for(6, [&](std::size_t i) { parallel_for(10, [&](std::size_t j) { hits[i * 10 + j].fetch_add(1); }); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  unsetenv("FLOWGEN_THREADS");
}

TEST(ParallelFor, RethrowsWorkerException) {
  setenv("FLOWGEN_THREADS", "2", 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) { if (i == 7) throw NumericError("boom"); }), NumericError);
  unsetenv("FLOWGEN_THREADS");
}

TEST(MaxThreads, HonorsEnvironmentCap) {
  setenv("FLOWGEN_THREADS", "3", 1);
  EXPECT_EQ(max_threads(), 3u);
  setenv("FLOWGEN_THREADS", "junk", 1);
  EXPECT_GE(max_threads(), 1u);
  unsetenv("FLOWGEN_THREADS");
}
