#pragma once

#include <cstddef>
#include <functional>

namespace wsar {

// Resolves a requested worker count: 0 means "all hardware threads".
std::size_t resolve_threads(std::size_t requested);

// Runs body(begin, end) over a static contiguous partition of [0, count)
// using `threads` workers. Chunk boundaries depend only on count and
// threads; callers that write disjoint outputs per index get results
// independent of the worker count.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wsar
