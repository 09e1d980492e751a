#pragma once

#include <cstddef>
#include <functional>

namespace kbin {

/// Worker count: KBIN_THREADS if set and positive, else the hardware count.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// claimed dynamically; the first exception is rethrown after all workers
/// stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kbin
