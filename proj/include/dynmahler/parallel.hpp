#pragma once

#include <cstddef>
#include <functional>

namespace dynmahler {

// 0 means std::thread::hardware_concurrency() (at least 1).
unsigned resolve_threads(unsigned threads);

// Calls body(i) for every i in [0, n), spread over the given number of
// threads. Iterations must write to disjoint outputs; the first exception
// thrown by any iteration is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace dynmahler
