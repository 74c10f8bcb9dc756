// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <functional>

namespace modspace {

// Process-wide worker count. 0 selects hardware concurrency. The
// MODSPACE_THREADS environment variable is consulted when nothing was set.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, count). Iterations must write to disjoint
// slots; callers reduce the slots afterwards in index order, which keeps
// every result independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace modspace
