#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace selfdual {

/// Worker count: hardware concurrency, capped by SELFDUAL_MAX_THREADS.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("SELFDUAL_MAX_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (...) {
    }
  }
  return n;
}

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// callers write results by index so output order does not depend on
/// scheduling.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace selfdual
