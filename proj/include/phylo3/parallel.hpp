#pragma once

// Deterministic parallel search for the first failing index.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace phylo3 {

/// Resolves a requested worker count: 0 means hardware concurrency.
inline unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Smallest i in [0, count) with fails(i) true, whatever the completion
/// order. Workers skip indices above the best failure found so far. The
/// first exception thrown (by index) is rethrown.
inline std::optional<std::size_t> first_failure(std::size_t count, unsigned threads,
                                                const std::function<bool(std::size_t)>& fails) {
  threads = worker_count(threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (fails(i)) return i;
    return std::nullopt;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i >= best.load()) return;
      try {
        if (!fails(i)) continue;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
      std::size_t seen = best.load();
      while (i < seen && !best.compare_exchange_weak(seen, i)) {
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error && error_index <= best.load()) std::rethrow_exception(error);
  if (best.load() == count) return std::nullopt;
  return best.load();
}

/// Runs body(i) for every i in [0, count) across workers.
inline void for_each_index(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  first_failure(count, threads, [&](std::size_t i) {
    body(i);
    return false;
  });
}

}  // namespace phylo3
