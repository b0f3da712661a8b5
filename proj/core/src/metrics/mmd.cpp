// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/metrics/mmd.hpp"

#include "flowgen/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace flowgen::metrics {
namespace {

void check_sets(const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y) {
  require(!x.empty() && !y.empty(), "mmd2: sample sets must be nonempty");
  const auto dim = x.front().size();
  for (const auto& v : x) {
    require(v.size() == dim, fmt::format("mmd2: dimension mismatch ({} vs {})", v.size(), dim));
  }
  for (const auto& v : y) {
    require(v.size() == dim, fmt::format("mmd2: dimension mismatch ({} vs {})", v.size(), dim));
  }
}

}  // namespace

std::string to_string(KernelKind k) { return k == KernelKind::kRbf ? "rbf" : "linear"; }

KernelKind parse_kernel(const std::string& name) {
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "linear") return KernelKind::kLinear;
  throw ValidationError(fmt::format("unknown MMD kernel '{}' (expected rbf or linear)", name));
}

double median_heuristic_sigma(const std::vector<Eigen::VectorXd>& x,
                              const std::vector<Eigen::VectorXd>& y) {
  std::vector<const Eigen::VectorXd*> pooled;
  pooled.reserve(x.size() + y.size());
  for (const auto& v : x) pooled.push_back(&v);
  for (const auto& v : y) pooled.push_back(&v);
  std::vector<double> dists;
  dists.reserve(pooled.size() * (pooled.size() - 1) / 2);
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = i + 1; j < pooled.size(); ++j) dists.push_back((*pooled[i] - *pooled[j]).norm());
  }
  if (dists.empty()) return 1.0;
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
  double median = dists[mid];
  if (dists.size() % 2 == 0) {
    const double lower = *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  return median > 0.0 ? median : 1.0;
}

double resolve_sigma(const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y,
                     const MmdKernel& kernel) {
  if (kernel.kind != KernelKind::kRbf) return 0.0;
  if (kernel.sigma) {
    require(*kernel.sigma > 0.0, "mmd2: RBF bandwidth must be positive");
    return *kernel.sigma;
  }
  return median_heuristic_sigma(x, y);
}

double mmd2(const std::vector<Eigen::VectorXd>& x, const std::vector<Eigen::VectorXd>& y,
            const MmdKernel& kernel) {
  check_sets(x, y);
  const double sigma = resolve_sigma(x, y, kernel);
  const double inv_two_sigma2 = kernel.kind == KernelKind::kRbf ? 1.0 / (2.0 * sigma * sigma) : 0.0;
  auto k = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (kernel.kind == KernelKind::kLinear) return a.dot(b);
    return std::exp(-(a - b).squaredNorm() * inv_two_sigma2);
  };
  auto block_sum = [&](const std::vector<Eigen::VectorXd>& p, const std::vector<Eigen::VectorXd>& q) {
    double s = 0.0;
    for (const auto& a : p) {
      for (const auto& b : q) s += k(a, b);
    }
    return s;
  };
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  return block_sum(x, x) / (m * m) + block_sum(y, y) / (n * n) - 2.0 * block_sum(x, y) / (m * n);
}

}  // namespace flowgen::metrics
