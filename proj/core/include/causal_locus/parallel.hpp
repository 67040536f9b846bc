#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace causal {

// Number of worker threads for data-parallel sweeps. Honors the
// CAUSAL_LOCUS_THREADS environment variable as an upper bound.
unsigned sweep_threads();

// Runs body(i) for i in [0, count). Each index is visited exactly once; the
// caller stores results by index so reductions stay in a fixed order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace causal
