#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace alflab {

// Worker count: hardware concurrency, capped by ALFLAB_THREADS when set.
[[nodiscard]] unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write results into per-index slots so the outcome does not depend on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 1);

// Same, over contiguous ranges [begin, end).
void parallel_ranges(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                     std::size_t min_chunk = 1024);

// Sum with a fixed blocking, so the rounding pattern is independent of the
// number of threads.
[[nodiscard]] double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace alflab
