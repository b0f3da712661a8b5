// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace flowgen::metrics {

enum class KernelKind {
  kRbf,
  kLinear,
};

std::string to_string(KernelKind k);
KernelKind parse_kernel(const std::string& name);

struct MmdKernel {
  KernelKind kind = KernelKind::kRbf;
  /// RBF bandwidth; the median heuristic is used when unset.
  std::optional<double> sigma;
};

/// Median of the pairwise Euclidean distances over the pooled sets (each
/// unordered pair once). Falls back to 1 when the median is 0.
double median_heuristic_sigma(const std::vector<Eigen::VectorXd>& x,
                              const std::vector<Eigen::VectorXd>& y);

/// Bandwidth that mmd2() will use for these sets and kernel settings.
double resolve_sigma(const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y,
                     const MmdKernel& kernel);

/// Biased (V-statistic) squared MMD:
///   1/m^2 sum k(x_i, x_i') + 1/n^2 sum k(y_j, y_j') - 2/(mn) sum k(x_i, y_j)
/// with k(a, b) = exp(-|a - b|^2 / (2 sigma^2)) or a.b.
double mmd2(const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y,
            const MmdKernel& kernel = {});

}  // namespace flowgen::metrics
