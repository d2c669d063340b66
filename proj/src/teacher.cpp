#include "alas/teacher.hpp"

#include <cmath>
#include <random>

#include "alas/errors.hpp"

namespace alas {

namespace {

// Distinct stream for the inputs so the weight draws never shift them.
constexpr std::uint64_t kInputStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

TeacherSpec TeacherSpec::nn1(std::size_t samples, std::uint64_t seed) {
  TeacherSpec spec;
  spec.architecture.layers = {2, 4, 2, 1};
  spec.samples = samples;
  spec.seed = seed;
  return spec;
}

TeacherSpec TeacherSpec::nn2(std::size_t samples, std::uint64_t seed) {
  TeacherSpec spec;
  spec.architecture.layers = {4, 4, 4, 4, 1};
  spec.samples = samples;
  spec.seed = seed;
  return spec;
}

Vector teacher_parameters(const TeacherSpec& spec) {
  spec.architecture.validate();
  const auto count = static_cast<Eigen::Index>(spec.architecture.parameter_count());
  if (spec.weights_override) {
    if (spec.weights_override->size() != count) throw InvalidInput("teacher: override has the wrong size");
    return *spec.weights_override;
  }
  if (!(spec.weight_spread >= 0.0)) throw InvalidInput("teacher: negative weight spread");
  const double stddev = spec.spread_is_variance ? std::sqrt(spec.weight_spread) : spec.weight_spread;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, stddev);
  Vector w(count);
  for (Eigen::Index k = 0; k < count; ++k) w(k) = normal(rng);
  return w;
}

Dataset teacher_generate(const TeacherSpec& spec) {
  if (spec.samples == 0) throw InvalidInput("teacher: need at least one sample");
  const Vector w = teacher_parameters(spec);
  const auto d = static_cast<Eigen::Index>(spec.architecture.input_width());
  const auto n = static_cast<Eigen::Index>(spec.samples);

  std::mt19937_64 rng(spec.seed ^ kInputStream);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Dataset data;
  data.features.resize(n, d);
  data.labels.resize(n);
  Vector x(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(j) = uniform(rng);
    data.features.row(i) = x.transpose();
    data.labels(i) = mlp_predict(spec.architecture, w, x);
  }
  data.provenance = "teacher:" + spec.architecture.label() + ":seed=" + std::to_string(spec.seed);
  return data;
}

}  // namespace alas
