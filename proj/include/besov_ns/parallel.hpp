#pragma once

#include <cstddef>
#include <functional>

namespace besov_ns {

/// Worker count: BESOV_NS_THREADS if set and positive, else hardware concurrency.
int worker_threads();

/// Runs body(i) for i in [0, count) on up to worker_threads() threads. The
/// first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace besov_ns
