#include "rosen/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rosen {

namespace {
int g_default_threads = 0;
}

void set_default_threads(int t) { g_default_threads = t; }

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (g_default_threads > 0) return g_default_threads;
  if (const char* env = std::getenv("ROSEN_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

void parallel_for(int n, const std::function<void(int)>& fn, int threads) {
  const int t = std::min(resolve_threads(threads), n);
  if (t <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(t));
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rosen
