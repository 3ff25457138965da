#pragma once

#include <cstddef>
#include <functional>

namespace avbench {

/// Runs fn(0) ... fn(n - 1) on up to `jobs` threads. Indices are claimed
/// dynamically, so callers must write results to per-index slots. If any call
/// throws, the exception of the lowest failing index is rethrown after all
/// workers finish.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

/// Hardware concurrency, at least 1.
unsigned default_jobs();

}  // namespace avbench
