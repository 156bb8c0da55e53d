#ifndef CURVESET_PARALLEL_HPP
#define CURVESET_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace curveset {

/// Thread cap from CURVESET_THREADS (0 or unset = hardware concurrency).
inline unsigned thread_cap() {
  if (const char* env = std::getenv("CURVESET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0,n), split into contiguous blocks across threads.
/// Each index writes only its own output slot, so results are deterministic;
/// callers do any reduction sequentially afterwards.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned threads = thread_cap();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run_block = [&](std::size_t w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    try {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  for (std::size_t w = 1; w < workers; ++w)
    pool.emplace_back(run_block, w);
  run_block(0);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace curveset

#endif  // CURVESET_PARALLEL_HPP
