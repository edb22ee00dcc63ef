#ifndef GEOCUT_PARALLEL_HPP_
#define GEOCUT_PARALLEL_HPP_

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace geocut {

// Runs fn(0..n_tasks-1) across up to n_threads workers (0 = hardware
// concurrency). Tasks must write only to their own slots; results are then
// independent of the thread count. The first exception is rethrown.
inline void parallel_for(int n_tasks, int n_threads,
                         const std::function<void(int)>& fn) {
  if (n_tasks <= 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  const int workers = std::min(n_tasks, n_threads > 0 ? n_threads : hw);
  if (workers <= 1) {
    for (int t = 0; t < n_tasks; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= n_tasks) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace geocut

#endif  // GEOCUT_PARALLEL_HPP_
