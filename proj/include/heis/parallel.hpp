#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace heis {

namespace detail {
inline std::atomic<int>& worker_setting() {
  static std::atomic<int> workers{0};
  return workers;
}
// Set on pool threads (and on the caller while it helps), so nested loops run serially.
inline bool& inside_pool() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

// Number of worker threads used by parallel loops. 0 means "decide": the
// HEIS_BETA_WORKERS environment variable, else the hardware concurrency.
inline void set_workers(int workers) { detail::worker_setting() = std::max(0, workers); }

inline int workers() {
  const int w = detail::worker_setting();
  if (w > 0) return w;
  if (const char* env = std::getenv("HEIS_BETA_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count). Each index writes only its own output
// slot, so results are independent of the worker count. If bodies throw,
// the exception of the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const int nw = detail::inside_pool()
                     ? 1
                     : static_cast<int>(std::min<std::size_t>(workers(), count));
  if (nw <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto run = [&] {
    const bool was_inside = detail::inside_pool();
    detail::inside_pool() = true;
    struct Restore {
      bool value;
      ~Restore() { detail::inside_pool() = value; }
    } restore{was_inside};
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw - 1);
  for (int k = 1; k < nw; ++k) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace heis
