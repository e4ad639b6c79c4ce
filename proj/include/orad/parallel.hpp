#pragma once

#include <cstddef>
#include <functional>

namespace orad {

/// Worker count: ORAD_THREADS if set and positive, else hardware concurrency.
int default_threads();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Each index is processed exactly once; the first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace orad
