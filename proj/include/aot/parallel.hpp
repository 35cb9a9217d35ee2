#pragma once

// Chunked parallel loops over index ranges. The worker count defaults to the
// hardware concurrency and can be overridden globally (the CLI wires its
// --threads flag and the AOTLAB_THREADS variable through set_thread_count).

#include <cstddef>
#include <functional>

namespace aot {

// Effective worker count: the explicit override if set, otherwise hardware
// concurrency (at least 1).
int thread_count();

// n > 0 pins the worker count; n == 0 restores the automatic default.
void set_thread_count(int n);

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
// one worker per chunk. Exceptions from workers are rethrown on the caller.
// threads == 0 uses thread_count().
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  int threads = 0);

}  // namespace aot
