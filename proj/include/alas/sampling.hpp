#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "alas/problem.hpp"

namespace alas {

enum class SamplingMode {
  WithReplacement,  ///< round(pi N) indices drawn uniformly, repeats allowed
  EpochPartition,   ///< reshuffle every pass, cut into disjoint batches
};

/// Batch size round(fraction * N); throws InvalidInput if fraction is not in
/// (0,1] or the rounded size is zero.
std::size_t batch_size(std::size_t population, double fraction);

/// Disjoint batches per data pass. Each pass shuffles 0..N-1 afresh and yields
/// floor(N / batch) batches; the remainder of the shuffle is dropped.
class EpochPartitionSampler {
 public:
  EpochPartitionSampler(std::size_t population, double fraction, std::uint64_t seed);

  SampleSet next();

  std::size_t batch() const { return batch_; }
  std::size_t batches_per_pass() const { return population_ / batch_; }
  /// Number of passes started so far.
  std::size_t passes() const { return passes_; }

 private:
  void reshuffle();

  std::size_t population_;
  std::size_t batch_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  std::size_t passes_ = 0;
};

/// Independent uniform draws with replacement.
class WithReplacementSampler {
 public:
  WithReplacementSampler(std::size_t population, double fraction, std::uint64_t seed);

  SampleSet next();

  std::size_t batch() const { return batch_; }

 private:
  std::size_t population_;
  std::size_t batch_;
  std::mt19937_64 rng_;
};

/// Either sampler behind one interface. With fraction == 1 it always returns
/// SampleSet::full, so the full-sample regime reproduces the deterministic
/// objective exactly.
class Sampler {
 public:
  Sampler(SamplingMode mode, std::size_t population, double fraction, std::uint64_t seed);

  SampleSet next();

 private:
  SamplingMode mode_;
  bool full_;
  std::size_t population_;
  EpochPartitionSampler partition_;
  WithReplacementSampler replacement_;
};

}  // namespace alas
