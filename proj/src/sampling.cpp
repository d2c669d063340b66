#include "alas/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alas/errors.hpp"

namespace alas {

std::size_t batch_size(std::size_t population, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidInput("sampling fraction must lie in (0,1]");
  if (population == 0) throw InvalidInput("sampling: empty population");
  const auto size = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(population)));
  if (size == 0) throw InvalidInput("sampling: fraction too small for the population");
  return std::min(size, population);
}

EpochPartitionSampler::EpochPartitionSampler(std::size_t population, double fraction, std::uint64_t seed)
    : population_(population), batch_(batch_size(population, fraction)), rng_(seed), order_(population) {
  cursor_ = population_;  // forces a shuffle on the first call
}

void EpochPartitionSampler::reshuffle() {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::shuffle(order_.begin(), order_.end(), rng_);
  cursor_ = 0;
  ++passes_;
}

SampleSet EpochPartitionSampler::next() {
  if (cursor_ + batch_ > population_) reshuffle();
  std::vector<std::size_t> indices(order_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                                   order_.begin() + static_cast<std::ptrdiff_t>(cursor_ + batch_));
  cursor_ += batch_;
  return SampleSet(std::move(indices), population_);
}

WithReplacementSampler::WithReplacementSampler(std::size_t population, double fraction, std::uint64_t seed)
    : population_(population), batch_(batch_size(population, fraction)), rng_(seed) {}

SampleSet WithReplacementSampler::next() {
  std::uniform_int_distribution<std::size_t> pick(0, population_ - 1);
  std::vector<std::size_t> indices(batch_);
  for (auto& i : indices) i = pick(rng_);
  return SampleSet(std::move(indices), population_);
}

Sampler::Sampler(SamplingMode mode, std::size_t population, double fraction, std::uint64_t seed)
    : mode_(mode),
      full_(fraction == 1.0),
      population_(population),
      partition_(population, fraction, seed),
      replacement_(population, fraction, seed) {}

SampleSet Sampler::next() {
  if (full_) return SampleSet::full(population_);
  return mode_ == SamplingMode::EpochPartition ? partition_.next() : replacement_.next();
}

}  // namespace alas
