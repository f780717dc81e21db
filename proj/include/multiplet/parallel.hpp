#pragma once

#include <cstddef>
#include <functional>

namespace multiplet {

/// Upper bound on worker threads.  0 means "not set": MULTIPLET_THREADS is
/// consulted, then hardware concurrency.
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Runs fn(i) for i in [0, n) over contiguous chunks.  Exceptions from workers
/// are rethrown on the caller (lowest failing chunk first).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace multiplet
