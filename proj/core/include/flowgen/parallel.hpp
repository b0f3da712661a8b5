// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace flowgen {

/// Worker cap: FLOWGEN_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t max_threads();

/// Runs body(i) for i in [0, n). Work is statically partitioned into
/// contiguous blocks; each index is visited exactly once. Callers write to
/// disjoint slots so the result does not depend on the thread count.
/// The first exception thrown by any worker is rethrown on the caller.
/// A call made from inside a worker runs serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace flowgen
