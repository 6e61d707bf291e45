#pragma once

#include <functional>

namespace wgnc {

/// Worker count: WGNC_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, n) over thread_count() workers with static
/// contiguous chunks. The first exception thrown by any worker is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace wgnc
