#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fracmt {

// ============================================================
// Deterministic parallel helpers.  Work items write into
// slot-indexed storage and reductions run in a fixed order, so
// the worker count (FRACMT_THREADS) never changes any result
// bit-for-bit.
// ============================================================

// Worker cap: FRACMT_THREADS if set and > 0, otherwise the hardware
// concurrency (at least 1).  A value of 0 means "auto".
int thread_count();

// Evaluates fn(i) for i in [0, n) on up to thread_count() workers; result i
// always lands in slot i.  The first exception thrown by any worker is
// rethrown on the calling thread after all workers join.
template <typename T>
std::vector<T> parallel_map(std::size_t n,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (n == 0) return out;

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Pairwise tree reduction with a fixed association order.  Used for all
// panel/cell accumulations: deterministic and better conditioned than a
// running left fold.
double tree_sum(std::vector<double> xs);

}  // namespace fracmt
