#pragma once

#include <cstddef>
#include <functional>

namespace wq {

/// Caps the worker count used by parallel_for. 0 restores the default (hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for every i in [0, n). Each index is visited exactly once, so bodies
/// that only write slot i give results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace wq
