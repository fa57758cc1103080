#pragma once
#include <functional>

namespace regvec::util {

// Worker count: REGVEC_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads. fn must only
// write to per-index state.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace regvec::util
