#pragma once

#include <thread>
#include <vector>

namespace weylq {

// Runs fn(i) for i in [0,n). Work item i writes only to slot i of its output,
// so the result is independent of the thread count.
template <typename Fn>
void parallel_for(size_t n, int threads, const Fn& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t nt = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (size_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace weylq
