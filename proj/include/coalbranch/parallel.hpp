#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace coalbranch {

// Worker budget: COALBRANCH_THREADS if set, else hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("COALBRANCH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count) on up to thread_budget() threads with a
// static partition. Bodies must only touch disjoint per-index slots; results
// are then independent of the schedule.
template <class Body>
void parallel_for(std::int64_t count, Body&& body) {
  const int threads = std::min<std::int64_t>(thread_budget(), count);
  if (threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const std::int64_t lo = count * t / threads;
    const std::int64_t hi = count * (t + 1) / threads;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Pairwise summation; the bracketing is a fixed function of the length, so
// totals do not depend on how the values were produced.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

// Sample mean and standard error of the mean.
inline MeanStderr mean_and_stderr(std::span<const double> values) {
  MeanStderr out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = values[i] - out.mean;
    sq[i] = dev * dev;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  out.stderr_of_mean = std::sqrt(var / static_cast<double>(n));
  return out;
}

}  // namespace coalbranch
