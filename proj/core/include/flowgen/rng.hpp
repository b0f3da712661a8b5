// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace flowgen {

/// Engine used by every stochastic operation. All randomness is threaded
/// through explicit instances; there is no global generator.
using Rng = std::mt19937_64;

/// Child seed derivation: hash64(master, component, index).
///
/// The component name is folded with FNV-1a, then mixed with the master seed
/// and index through two rounds of the splitmix64 finalizer. Consumers that
/// need independent streams (training, per-item sampling, pairing) each get
/// their own child seed so that adding a consumer never perturbs the others.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                          std::uint64_t index = 0) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Uniform on [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform integer on [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace flowgen
