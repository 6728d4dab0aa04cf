#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace seprate {

/// Worker count: SEPRATE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Splits [0, n) into contiguous chunks, evaluates `chunk(begin, end)` on up
/// to thread_count() threads and adds the partial results in chunk order.
/// The chunking depends only on n, so the result does not depend on the
/// number of threads as long as `chunk` is a pure function of its range.
template <class T, class Fn>
T parallel_reduce(long n, T init, Fn chunk) {
  if (n <= 0) return init;
  constexpr long kChunk = 256;
  const long chunks = (n + kChunk - 1) / kChunk;
  std::vector<T> partial(static_cast<std::size_t>(chunks), T{});
  const int workers = static_cast<int>(std::min<long>(thread_count(), chunks));
  auto run = [&](int worker) {
    for (long c = worker; c < chunks; c += workers) {
      partial[static_cast<std::size_t>(c)] = chunk(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const T& p : partial) init += p;
  return init;
}

}  // namespace seprate
