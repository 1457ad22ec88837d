#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace sumrules::detail {

/// Worker cap: SUMRULES_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline std::size_t thread_cap() {
  if (const char* env = std::getenv("SUMRULES_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// results[i] = fn(i) for i < count, evaluated in batches of thread_cap()
/// tasks. Output order is the index order regardless of completion order.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results;
  results.reserve(count);
  const std::size_t cap = thread_cap();
  if (cap <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results.push_back(fn(i));
    return results;
  }
  for (std::size_t start = 0; start < count; start += cap) {
    std::vector<std::future<Result>> batch;
    for (std::size_t i = start; i < std::min(count, start + cap); ++i) {
      batch.push_back(std::async(std::launch::async, fn, i));
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

}  // namespace sumrules::detail
