#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sinhproj {

// Worker count: SINHPROJ_THREADS if set (>=1), otherwise hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("SINHPROJ_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs f(i) for i in [0, n).  Work is split into contiguous blocks, one per
// worker, so the partition (and any per-iteration rounding) is deterministic
// for a fixed SINHPROJ_THREADS.
template <class F>
void parallel_for(int n, F&& f) {
  if (n <= 0) return;
  int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int base = n / workers, rem = n % workers;
  int start = 0;
  for (int w = 0; w < workers; ++w) {
    int len = base + (w < rem ? 1 : 0);
    pool.emplace_back([&f, start, len] {
      for (int i = start; i < start + len; ++i) f(i);
    });
    start += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace sinhproj
