#pragma once

#include <functional>

namespace rosen {

// Replicate fan-out: runs fn(0..n-1) on up to `threads` workers. Results must
// be written to per-index slots; with counter-based streams the outcome is
// identical for any worker count.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

// 0 resolves to ROSEN_THREADS or 1
int resolve_threads(int requested);
void set_default_threads(int t);

}  // namespace rosen
