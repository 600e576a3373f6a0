#pragma once

#include <cstddef>
#include <functional>

namespace legiplan {

/// Worker cap from LEGIPLAN_THREADS, else the hardware concurrency (min 1).
int worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index runs
/// exactly once; exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace legiplan
