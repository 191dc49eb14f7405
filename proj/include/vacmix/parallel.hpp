#ifndef VACMIX_PARALLEL_HPP
#define VACMIX_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace vacmix {

int default_threads();
void set_default_threads(int n);

// Chunked parallel map over [0, n). The worker receives an index. Exceptions
// from workers are rethrown (first one wins) on the calling thread.
inline void parallel_for(long n, const std::function<void(long)>& fn,
                         int threads = 0) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk, hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi, t] {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace vacmix

#endif
