#pragma once

#include <cstddef>
#include <functional>

namespace deph {

/// Runs fn(0..n-1) on up to `threads` workers. Indices are handed out in
/// order; results must be written to per-index slots by the caller. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// std::thread::hardware_concurrency(), capped by the DEPH_THREADS
/// environment variable when set. Always >= 1.
unsigned default_thread_count();

}  // namespace deph
