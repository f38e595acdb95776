/**
 * @file parallel.hpp
 * @brief Minimal fork-join helper for embarrassingly parallel loops.
 */

#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace incentive {

/// Number of worker threads: hardware concurrency, capped by the
/// INCENTIVE_THREADS environment variable when it is set to a positive value.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("INCENTIVE_THREADS")) {
    char *end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<long>(n, cap);
  }
  return n;
}

/**
 * @brief Run fn(begin, end) over disjoint chunks of [0, n), possibly on
 * several threads.
 *
 * Chunks are contiguous and deterministic, so writes indexed by position
 * need no synchronization and results do not depend on the thread count.
 */
template <typename Fn>
void parallel_chunks(std::size_t n, Fn &&fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto &t : threads) t.join();
}

}  // namespace incentive
