#include <gtest/gtest.h>

#include <cstdlib>

#include "seprate/parallel.hpp"
#include "seprate/rng.hpp"

using namespace seprate;

namespace {

double noisy_sum(long n) {
  return parallel_reduce(n, 0.0, [](long begin, long end) {
    double acc = 0.0;
    for (long i = begin; i < end; ++i) acc += CounterRng({3, static_cast<std::uint64_t>(i)}).normal();
    return acc;
  });
}

}  // namespace

TEST(ParallelReduce, CountsEveryIndexOnce) {
  const long total = parallel_reduce(10001L, 0L, [](long b, long e) { return e - b; });
  EXPECT_EQ(total, 10001L);
  EXPECT_EQ(parallel_reduce(0L, 5L, [](long, long) { return 1L; }), 5L);
}

TEST(ParallelReduce, ThreadCountDoesNotChangeResult) {
  setenv("SEPRATE_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1);
  const double serial = noisy_sum(5000);
  setenv("SEPRATE_THREADS", "7", 1);
  EXPECT_EQ(thread_count(), 7);
  const double threaded = noisy_sum(5000);
  unsetenv("SEPRATE_THREADS");
  EXPECT_EQ(serial, threaded);
  EXPECT_GE(thread_count(), 1);
}
