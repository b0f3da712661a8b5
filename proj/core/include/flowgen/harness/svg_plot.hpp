// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flowgen/harness/sweep_csv.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace flowgen::harness {

/// Four panels (DTW, Wasserstein, MMD^2, spectral similarity) against NFE on
/// a log axis, one polyline per method per panel. Methods keep their order of
/// first appearance. The output depends only on `rows`.
std::string render_sweep_svg(const std::vector<SweepRow>& rows);

/// Reads a sweep CSV and writes the SVG.
void render_sweep_plot(const std::filesystem::path& csv, const std::filesystem::path& svg);

}  // namespace flowgen::harness
