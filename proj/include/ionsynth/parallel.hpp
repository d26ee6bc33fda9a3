#pragma once

#include <cstddef>
#include <functional>

namespace ionsynth {

/// Runs fn(0..n_jobs-1) across up to `threads` workers. Jobs must write to
/// disjoint slots; results are then independent of scheduling. The first
/// exception thrown by any job is rethrown after all workers join.
void parallel_for(std::size_t n_jobs, int threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace ionsynth
