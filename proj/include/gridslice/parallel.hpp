#pragma once

#include <cstddef>
#include <functional>

namespace gridslice {

/// Worker count: GRIDSLICE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Runs fn(0..count-1) on up to worker_count() threads. Callers write into
/// per-index slots, so results never depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace gridslice
