#pragma once

#include <cstddef>
#include <functional>

namespace ssrt {

// Worker count: SSRTKIT_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
unsigned thread_count();

// Calls fn(i) for every i in [0, n), spreading contiguous blocks of indices
// over thread_count() workers. fn must only write state owned by index i.
// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ssrt
