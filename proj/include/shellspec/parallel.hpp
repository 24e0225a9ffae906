#pragma once

#include <functional>

namespace shellspec {

// Explicit count if positive, else SHELLSPEC_THREADS, else 1.
int resolve_threads(int requested);

// Runs body(i) for i in [0, n) on up to `threads` workers with static chunking.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace shellspec
