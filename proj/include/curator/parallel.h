#ifndef CURATOR_PARALLEL_H_
#define CURATOR_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace curator {

// Runs fn(i) for i in [0, n) on up to `jobs` threads with static chunking.
// Callers write results into pre-sized slots indexed by i, so output does
// not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(n, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t: threads) {
    t.join();
  }
  for (auto &e: errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace curator

#endif  // CURATOR_PARALLEL_H_
