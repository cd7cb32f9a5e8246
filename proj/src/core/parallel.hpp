#pragma once

#include <functional>

namespace softedge {

// SOFTEDGE_THREADS if set and positive, else hardware concurrency (at least 1).
int default_workers();

// Calls body(i) for i in [0, count) on up to `workers` threads; the first
// exception thrown by any call is rethrown after all threads join.
void parallel_for(int count, const std::function<void(int)>& body, int workers = 0);

} // namespace softedge
