#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace newslink {

// Runs fn(i) for i in [0, count) over a small thread pool. Work items must
// be independent; results keyed by index stay deterministic regardless of
// scheduling. The first exception is rethrown after all threads join.
template <typename Fn>
void parallel_for_index(size_t count, Fn&& fn, unsigned max_threads = 0) {
  if (count == 0) return;
  unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned workers =
      static_cast<unsigned>(std::min<size_t>(hw, count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
}

}  // namespace newslink
