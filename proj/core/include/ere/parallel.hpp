#pragma once

#include <cstddef>
#include <functional>

namespace ere {

// Pool size: ERE_STABILITY_THREADS if set to a positive integer, else hardware concurrency.
int worker_count();

// Runs fn(0..n-1) on up to `threads` workers (0 = worker_count()). Indices are handed out
// dynamically; the first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace ere
