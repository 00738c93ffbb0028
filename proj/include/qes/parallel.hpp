#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qes {

/// Worker budget for batch computations. QES_THREADS caps it; the default is
/// single-threaded so results and timings stay predictable.
inline int thread_budget() {
  const char* env = std::getenv("QES_THREADS");
  if (!env) return 1;
  try {
    int n = std::stoi(env);
    return n >= 1 ? n : 1;
  } catch (...) {
    return 1;
  }
}

/// Splits [0, n) into contiguous chunks, runs fn(begin, end, chunk_result) on
/// each, and returns the chunk results in index order. The merge is therefore
/// deterministic regardless of the worker count.
template <class Result, class Fn>
std::vector<Result> chunked_run(long long n, Fn fn) {
  int workers = thread_budget();
  if (n <= 0) return {};
  if (workers > n) workers = static_cast<int>(n);
  std::vector<Result> results(workers);
  if (workers == 1) {
    fn(0LL, n, results[0]);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long begin = w * chunk;
    long long end = std::min(n, begin + chunk);
    pool.emplace_back([&, w, begin, end] { fn(begin, end, results[w]); });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace qes
