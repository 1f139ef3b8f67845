#pragma once

#include <cstddef>
#include <functional>

namespace qmp {

// Worker count: QMP_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers write
// results into preallocated slots so assembly order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qmp
