#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace matlog {

/// Scans [0, total) for the least index accepted by `pred`, splitting the
/// range into ordered blocks consumed by `threads` workers. The result (and
/// hence any witness derived from it) does not depend on the worker count.
inline std::optional<std::uint64_t> parallel_find_first(
    std::uint64_t total, int threads, const std::function<bool(int, std::uint64_t)>& pred) {
  if (threads < 1) threads = 1;
  if (threads == 1 || total < 4096) {
    for (std::uint64_t i = 0; i < total; ++i)
      if (pred(0, i)) return i;
    return std::nullopt;
  }
  const std::uint64_t block = 4096;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::vector<std::thread> workers;
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (;;) {
        std::uint64_t lo = next.fetch_add(block);
        if (lo >= total || lo >= best.load()) return;
        std::uint64_t hi = std::min(total, lo + block);
        for (std::uint64_t i = lo; i < hi; ++i) {
          if (pred(t, i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
}

}  // namespace matlog
