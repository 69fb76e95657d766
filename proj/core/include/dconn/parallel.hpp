#pragma once

#include <cstddef>
#include <functional>

namespace dconn {

/// Upper bound on worker threads for per-item loops. Defaults to the hardware
/// concurrency; the CLI sets it from DCONN_THREADS.
int thread_limit() noexcept;
void set_thread_limit(int threads);

/// Runs fn(i) for i in [0, n), statically partitioned over at most
/// thread_limit() threads. Results must be written to per-index slots. If any
/// call throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dconn
