#ifndef SYMSAMPLE_PARALLEL_HPP
#define SYMSAMPLE_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace symsample {

// Runs fn(i) for i in [0, n) on up to `workers` threads with static chunking.
// The work split depends only on (n, workers); whether results depend on the
// worker count is up to the caller — all samplers here index their random
// draws so that they do not. fn must write to disjoint slots per i.
template <typename F>
void parallel_for(int n, int workers, F&& fn) {
  if (n <= 0) return;
  const int w = std::min(workers, n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(w));
  for (int t = 0; t < w; ++t) {
    const int lo = int(std::int64_t(n) * t / w);
    const int hi = int(std::int64_t(n) * (t + 1) / w);
    pool.emplace_back([&, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace symsample

#endif
