#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace volent {

/// Worker count: VOLENT_WORKERS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
  if (const char* env = std::getenv("VOLENT_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

/// Runs fn(i) for i in [0, n) on a small worker pool. Results must be written
/// into preallocated slots so the outcome is independent of the thread count.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned workers = std::min<size_t>(worker_count(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace volent
