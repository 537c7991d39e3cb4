#pragma once

// Deterministic data parallelism. Work is split into contiguous index blocks;
// results land in caller-owned slots, so the output never depends on the
// number of workers.

#include <cstddef>
#include <functional>
#include <span>

namespace qmflow {

/// QMFLOW_WORKERS if set to a positive integer, else hardware concurrency.
int worker_count();

/// Calls fn(i) for i in [0, n), possibly concurrently. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise (tree) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

}  // namespace qmflow
