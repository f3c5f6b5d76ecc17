#pragma once

#include <cstdlib>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace crsphere {

/// Pairwise (tree) reduction over a fixed element order. The result depends
/// only on that order, never on chunk sizes or thread counts, so every sum
/// built on it is bit-reproducible.
template <typename T>
T tree_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T acc = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) acc += v[i];
    return acc;
  }
  const std::size_t mid = v.size() / 2;
  return tree_sum(v.subspan(0, mid)) + tree_sum(v.subspan(mid));
}

template <typename T>
T tree_sum(const std::vector<T>& v) {
  return tree_sum(std::span<const T>(v.data(), v.size()));
}

/// Worker cap: CRSPHERE_THREADS if set (>= 1), else hardware concurrency.
inline unsigned max_threads() {
  if (const char* s = std::getenv("CRSPHERE_THREADS")) {
    const long k = std::atol(s);
    if (k >= 1) return static_cast<unsigned>(k);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

/// Runs fn(0..count-1) with item->result mapping independent of the worker
/// count: each item writes only its own output slot. fn must not throw.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = max_threads();
  if (workers > count) workers = count ? count : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace crsphere
