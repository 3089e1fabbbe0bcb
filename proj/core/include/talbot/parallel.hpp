#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace talbot {

/// Number of worker threads used by the chunked loops below. Defaults to the
/// hardware concurrency; set_worker_count(1) forces serial execution.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Calls body(begin, end) on contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count, so reductions performed per chunk
/// and combined in chunk order are deterministic for a fixed worker count.
template <typename Body>
void parallel_chunks(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1 || n < 2) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace talbot
