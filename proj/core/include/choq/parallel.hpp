#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace choq {

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Static block partition of [0, count). Each index is processed exactly once
/// and writes only to its own output slot, so results do not depend on the
/// thread count. Reductions are done by the caller after the join, in index
/// order.
template <class F>
void parallel_for(std::int64_t count, int threads, F&& fn) {
  threads = effective_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);
  std::int64_t block = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    std::int64_t lo = t * block;
    std::int64_t hi = lo + block < count ? lo + block : count;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Same partition, but hands each worker its contiguous [lo, hi) block so it
/// can set up per-thread scratch state once.
template <class F>
void parallel_blocks(std::int64_t count, int threads, F&& fn) {
  threads = effective_threads(threads);
  if (threads <= 1 || count <= 1) {
    fn(std::int64_t{0}, count);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);
  std::int64_t block = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    std::int64_t lo = t * block;
    std::int64_t hi = lo + block < count ? lo + block : count;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace choq
