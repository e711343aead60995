// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Minimal static-partition parallel loop. Each index is processed exactly
// once by exactly one worker, so callers that write only to slot i produce
// output independent of the thread count.

#ifndef DONSEG_PARALLEL_HPP
#define DONSEG_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace donseg {

/// 0 means "all hardware threads".
inline unsigned resolveThreads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// @brief Runs `body(begin, end)` over contiguous blocks of [0, n).
///
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallelForBlocks(std::size_t n, unsigned threads, Body&& body) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(resolveThreads(threads), (n + 255) / 256);
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  pool.clear();  // joins
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void parallelFor(std::size_t n, unsigned threads, Body&& body) {
  parallelForBlocks(n, threads, [&body](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace donseg

#endif  // DONSEG_PARALLEL_HPP
