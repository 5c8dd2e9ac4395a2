#pragma once

#include <cstddef>
#include <functional>

namespace fairseq {

// Worker count: FAIRSEQ_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads. Items are
// independent, so results written by index are deterministic. The first
// exception thrown by any item is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fairseq
