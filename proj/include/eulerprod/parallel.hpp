#pragma once

#include <cstddef>
#include <functional>

namespace eulerprod {

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_threads();

/// Runs body(begin, end) over a static partition of [0, n) into at most
/// `threads` contiguous chunks. threads == 0 means default_threads().
/// Work items must write to disjoint outputs; any reduction is left to the
/// caller so it can be done in index order. The first exception thrown by a
/// chunk is rethrown after all chunks finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace eulerprod
