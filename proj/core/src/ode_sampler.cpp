// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/ode_sampler.hpp"

#include "flowgen/error.hpp"
#include "flowgen/parallel.hpp"
#include "flowgen/rng.hpp"

#include <optional>

#include <fmt/format.h>

namespace flowgen {

std::string to_string(Integrator m) { return m == Integrator::kEuler ? "euler" : "midpoint"; }

Integrator parse_integrator(const std::string& name) {
  if (name == "euler") return Integrator::kEuler;
  if (name == "midpoint") return Integrator::kMidpoint;
  throw ValidationError(fmt::format("unknown integrator '{}' (expected euler or midpoint)", name));
}

Eigen::VectorXd initial_noise(std::size_t dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "sample.x0"));
  Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = standard_normal(rng);
  return x;
}

Eigen::VectorXd integrate_flat(const VectorField& field, Eigen::VectorXd x0, const ConditionVector& c,
                               std::size_t nfe, Integrator method) {
  require(nfe >= 1, "integrate: nfe must be at least 1");
  require(static_cast<std::size_t>(x0.size()) == field.dim(),
          fmt::format("integrate: state has {} elements, field expects {}", x0.size(), field.dim()));
  Eigen::VectorXd x = std::move(x0);
  if (method == Integrator::kEuler) {
    const double h = 1.0 / static_cast<double>(nfe);
    for (std::size_t k = 0; k < nfe; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(nfe);
      x += h * field(x, c, t);
    }
  } else {
    require(nfe % 2 == 0, fmt::format("integrate: midpoint needs an even nfe, got {}", nfe));
    const std::size_t steps = nfe / 2;
    const double h = 1.0 / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(steps);
      const Eigen::VectorXd half = x + 0.5 * h * field(x, c, t);
      x += h * field(half, c, t + 0.5 * h);
    }
  }
  if (!x.allFinite()) throw NumericError("integrate: non-finite state after integration");
  return x;
}

MultiLeadSignal integrate(const VectorField& field, const SignalShape& shape, const SampleRequest& req) {
  require(shape.size() == field.dim(),
          fmt::format("integrate: shape {} does not match field dimension {}", to_string(shape),
                      field.dim()));
  const Eigen::VectorXd x1 =
      integrate_flat(field, initial_noise(shape.size(), req.seed), req.condition, req.nfe, req.method);
  return MultiLeadSignal::from_flat({x1.data(), static_cast<std::size_t>(x1.size())}, shape);
}

std::uint64_t item_seed(std::uint64_t seed, std::size_t index) {
  return derive_seed(seed, "sample.item", index);
}

std::vector<MultiLeadSignal> batch_generate(const VectorField& field, const SignalShape& shape,
                                            const std::vector<ConditionVector>& conditions,
                                            std::size_t nfe, std::uint64_t seed, Integrator method) {
  require(!conditions.empty(), "batch_generate: no conditions given");
  std::vector<std::optional<MultiLeadSignal>> slots(conditions.size());
  parallel_for(conditions.size(), [&](std::size_t i) {
    slots[i] = integrate(field, shape, {conditions[i], nfe, item_seed(seed, i), method});
  });
  std::vector<MultiLeadSignal> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace flowgen
