#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dgk {

// Worker cap: DGL_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("DGL_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn on [begin, end) index chunks; results merged in chunk order so the
// outcome is deterministic regardless of scheduling.
template <typename Result>
Result parallel_chunks(std::size_t n,
                       const std::function<Result(std::size_t, std::size_t)>& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2 * workers) return fn(0, n);
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<Result> results(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, w, lo, hi] { results[w] = fn(lo, hi); });
  }
  for (auto& t : threads) t.join();
  Result merged = std::move(results[0]);
  for (std::size_t w = 1; w < results.size(); ++w) merged.merge(results[w]);
  return merged;
}

}  // namespace dgk
