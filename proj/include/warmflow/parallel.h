#ifndef WARMFLOW_PARALLEL_H_
#define WARMFLOW_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace warmflow {

// Calls fn(i) for i in [0, count) on a bounded pool of threads. Each index
// runs exactly once; callers write results into slot i so output order never
// depends on scheduling. The exception from the lowest failing index, if
// any, is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_workers = 0) {
  if (count == 0) return;
  unsigned workers = max_workers != 0 ? max_workers
                                      : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(
      std::clamp<std::size_t>(workers, 1, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = count;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (i < error_index) {
              error_index = i;
              error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace warmflow

#endif  // WARMFLOW_PARALLEL_H_
