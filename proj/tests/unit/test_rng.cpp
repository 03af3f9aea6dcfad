#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hetgraph/parallel.hpp"
#include "hetgraph/rng.hpp"

using namespace hetgraph;

TEST(CounterRng, SameSeedSameStream) {
  CounterRng a(42), b(42), c(43), d(42, 1);
  bool differs_seed = false, differs_stream = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs_seed = differs_seed || x != c.next();
    differs_stream = differs_stream || x != d.next();
  }
  EXPECT_TRUE(differs_seed);
  EXPECT_TRUE(differs_stream);
}

TEST(CounterRng, BelowStaysInRangeAndCoversIt) {
  CounterRng rng(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(CounterRng, ShuffleIsPermutation) {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  CounterRng rng(9);
  fisher_yates_shuffle(std::span<int>(v), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST(Parallel, PairwiseSumMatchesAndForRethrows) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum(std::span<const double>{}), 0.0);

  std::vector<int> seen(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { seen[i] += 1; });
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
               std::runtime_error);
}
