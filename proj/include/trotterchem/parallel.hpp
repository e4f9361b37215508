#pragma once

// Minimal index-parallel loop for parameter sweeps. Results must be written
// to pre-sized slots keyed by index so output stays deterministic regardless
// of the worker count. TROTTERCHEM_THREADS caps the pool.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace trotterchem {

inline int worker_count(std::size_t n_items) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("TROTTERCHEM_THREADS")) {
    long cap = std::atol(env);
    if (cap >= 1 && cap < static_cast<long>(hw)) hw = static_cast<unsigned>(cap);
  }
  if (n_items < hw) hw = static_cast<unsigned>(n_items);
  return static_cast<int>(hw == 0 ? 1 : hw);
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace trotterchem
