#pragma once

#include <cstddef>
#include <functional>

namespace fockida {

// Worker count from FOCKIDA_WORKERS, falling back to the hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index runs exactly once;
// callers write into preallocated per-index slots so the result does not depend on scheduling.
// Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fockida
