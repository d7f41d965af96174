#pragma once

#include <cstddef>
#include <functional>

namespace sos {

// Upper bound on worker threads used by parallel_for; 0 means hardware concurrency.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

// Runs body(i) for i in [0, n). Work items are split into contiguous chunks, so
// any output written by index is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sos
