#pragma once

// Fan-out over index ranges. Each index writes only its own slot, so results do
// not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace prodone {

/// PRODONE_THREADS caps the worker count; unset or invalid means all cores.
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PRODONE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

template <class F>
void parallel_for(std::uint64_t n, F&& f, std::uint64_t grain = 64) {
  unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), (n + grain - 1) / std::max<std::uint64_t>(grain, 1)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto body = [&] {
    try {
      for (;;) {
        std::uint64_t lo = next.fetch_add(grain);
        if (lo >= n) return;
        std::uint64_t hi = std::min(n, lo + grain);
        for (std::uint64_t i = lo; i < hi; ++i) f(i);
      }
    } catch (...) {
      std::lock_guard lk(m);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace prodone
