#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "alas/errors.hpp"
#include "alas/sampling.hpp"

using namespace alas;

namespace {

std::vector<std::size_t> sorted(const SampleSet& s) {
  std::vector<std::size_t> v(s.indices().begin(), s.indices().end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(BatchSize, RoundsAndRejects) {
  EXPECT_EQ(batch_size(10, 0.5), 5u);
  EXPECT_EQ(batch_size(5000, 0.05), 250u);
  EXPECT_EQ(batch_size(10, 0.25), 3u);  // llround rounds half away from zero
  EXPECT_THROW(batch_size(10, 0.0), InvalidInput);
  EXPECT_THROW(batch_size(10, 1.5), InvalidInput);
  EXPECT_THROW(batch_size(10, 0.01), InvalidInput);
}

TEST(EpochPartition, HalvesCoverEveryIndex) {
  EpochPartitionSampler s(10, 0.5, 1);
  EXPECT_EQ(s.batches_per_pass(), 2u);
  for (int pass = 0; pass < 3; ++pass) {
    const auto a = s.next(), b = s.next();
    EXPECT_EQ(a.size(), 5u);
    EXPECT_EQ(b.size(), 5u);
    std::set<std::size_t> all(a.indices().begin(), a.indices().end());
    all.insert(b.indices().begin(), b.indices().end());
    EXPECT_EQ(all.size(), 10u);
  }
  EXPECT_EQ(s.passes(), 3u);
}

TEST(EpochPartition, FullFractionIsShuffledFullSet) {
  EpochPartitionSampler s(20, 1.0, 3);
  bool any_shuffled = false;
  for (int i = 0; i < 5; ++i) {
    const auto b = s.next();
    EXPECT_EQ(sorted(b), sorted(SampleSet::full(20)));
    any_shuffled = any_shuffled || !(b == SampleSet::full(20));
  }
  EXPECT_TRUE(any_shuffled);
}

TEST(EpochPartition, RemainderDropped) {
  EpochPartitionSampler s(10, 0.3, 5);
  EXPECT_EQ(s.batch(), 3u);
  EXPECT_EQ(s.batches_per_pass(), 3u);
  for (int pass = 0; pass < 4; ++pass) {
    std::set<std::size_t> seen;
    for (int b = 0; b < 3; ++b) {
      const auto batch = s.next();
      EXPECT_EQ(batch.size(), 3u);
      seen.insert(batch.indices().begin(), batch.indices().end());
    }
    EXPECT_EQ(seen.size(), 9u);  // disjoint within a pass, one index left out
  }
  EXPECT_EQ(s.passes(), 4u);
}

TEST(EpochPartition, SeededDeterminism) {
  EpochPartitionSampler a(100, 0.1, 42), b(100, 0.1, 42), c(100, 0.1, 43);
  bool differs = false;
  for (int i = 0; i < 30; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || !(x == c.next());
  }
  EXPECT_TRUE(differs);
}

TEST(WithReplacement, SizeRangeAndDeterminism) {
  WithReplacementSampler a(50, 0.2, 9), b(50, 0.2, 9);
  for (int i = 0; i < 20; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x.size(), 10u);
    for (auto idx : x.indices()) EXPECT_LT(idx, 50u);
    EXPECT_EQ(x, b.next());
  }
}

TEST(Sampler, FullFractionIsAscendingFullSet) {
  for (auto mode : {SamplingMode::WithReplacement, SamplingMode::EpochPartition}) {
    Sampler t(mode, 7, 1.0, 11);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(t.next(), SampleSet::full(7));
  }
}
