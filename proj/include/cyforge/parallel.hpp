#pragma once

#include <cstddef>
#include <functional>

namespace cyforge {

/// Worker count from CYFORGE_THREADS (unset or 0 = hardware concurrency).
unsigned thread_count();

/// Runs f(0..n-1) on up to thread_count() threads. Results must be written
/// to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace cyforge
