#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "alas/dataset.hpp"
#include "alas/mlp.hpp"

namespace alas {

/// Synthetic regression data labelled by a random tanh network.
struct TeacherSpec {
  MlpSpec architecture;
  /// Spread of the N(0, .) weight and bias draws.
  double weight_spread = 3.0;
  /// When true, weight_spread is a variance rather than a standard deviation.
  bool spread_is_variance = false;
  std::size_t samples = 50000;
  std::uint64_t seed = 0;
  /// Test hook: use these teacher parameters instead of random draws.
  std::optional<Vector> weights_override;

  /// Two inputs, hidden layers (4, 2), one output.
  static TeacherSpec nn1(std::size_t samples, std::uint64_t seed);
  /// Four inputs and three hidden layers. The widths (4, 4, 4) are a default
  /// choice; pass other widths through `architecture` directly.
  static TeacherSpec nn2(std::size_t samples, std::uint64_t seed);
};

/// Teacher parameters drawn from the spec's seed (the same stream as teacher_generate).
Vector teacher_parameters(const TeacherSpec& spec);

/// Draws inputs uniformly from (0,1)^d and labels them with the teacher.
///
/// Weights and inputs come from separate seeded streams and inputs are drawn
/// sample by sample, so increasing `samples` only appends rows.
Dataset teacher_generate(const TeacherSpec& spec);

}  // namespace alas
