#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fresco {

/// Runs fn(i) for i in [0, n). Work items must not depend on execution
/// order; results must be written to pre-assigned slots so the outcome is
/// identical for any thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (n == 0) return;
  if (threads == 1 || n == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = int(std::min<size_t>(size_t(threads), n));
  pool.reserve(size_t(spawn - 1));
  for (int t = 1; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace fresco
