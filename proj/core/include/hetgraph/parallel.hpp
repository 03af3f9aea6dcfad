#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace hetgraph {

/// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnvVar = "HETGRAPH_THREADS";

/// Worker count from HETGRAPH_THREADS if set and positive, else hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(task) for task in [0, tasks) on up to `threads` workers pulling from a
// shared counter. The first exception thrown by any task is rethrown here.
template <typename Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
  if (tasks == 0) return;
  const auto workers = static_cast<std::size_t>(std::max(1u, threads));
  if (workers == 1 || tasks == 1) {
    for (std::size_t t = 0; t < tasks; ++t) fn(t);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= tasks || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    const std::size_t spawn = std::min(workers, tasks);
    pool.reserve(spawn - 1);
    for (std::size_t w = 1; w < spawn; ++w) pool.emplace_back(body);
    body();
  }
  if (error) std::rethrow_exception(error);
}

/// Pairwise (cascade) summation; error grows with log n instead of n.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 64;
  if (values.size() <= kLeaf) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace hetgraph
