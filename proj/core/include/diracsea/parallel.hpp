#pragma once

#include <cstddef>
#include <functional>

namespace diracsea {

/// Worker count from DIRACSEA_THREADS, falling back to hardware concurrency.
unsigned default_thread_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end) on each. Chunk boundaries depend only on n and threads,
/// so callers writing into per-index slots get identical results for any
/// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  unsigned threads = default_thread_count());

}  // namespace diracsea
