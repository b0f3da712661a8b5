// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/error.hpp"

namespace flowgen {

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const NumericError*>(&e) != nullptr) return 4;
  if (dynamic_cast<const IoError*>(&e) != nullptr) return 3;
  if (dynamic_cast<const ValidationError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const ContractViolation*>(&e) != nullptr) return 2;
  return 1;
}

}  // namespace flowgen
