#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mollow {

/// Runs body(begin, end) over a static block partition of [0, count) on up
/// to `workers` threads. Blocks are contiguous and disjoint, so callers can
/// write results into preallocated storage without synchronization. The
/// first exception thrown by any block is rethrown on the calling thread.
template <typename Body>
void parallel_blocks(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t base = count / workers;
    const std::size_t extra = count % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t end = begin + base + (w < extra ? 1 : 0);
      pool.emplace_back([&, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
      begin = end;
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mollow
