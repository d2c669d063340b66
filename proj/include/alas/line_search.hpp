#pragma once

#include <functional>
#include <vector>

#include "alas/types.hpp"

namespace alas {

enum class DecreaseCondition {
  Cubic,      ///< m(x + a d) - m(x) <= -(eta/6) a^3 ||d||^3
  Quadratic,  ///< m(x + a d) - m(x) <= -(eta/2) a^2 ||d||^2
};

struct LineSearchConfig {
  double theta = 0.9;
  double eta = 1e-2;
  DecreaseCondition condition = DecreaseCondition::Cubic;
  int max_backtracks = 50;

  /// Throws InvalidInput unless theta in (0,1), eta > 0 and max_backtracks >= 1.
  void validate() const;

  friend bool operator==(const LineSearchConfig&, const LineSearchConfig&) = default;
};

struct LineSearchTrial {
  double alpha = 0.0;
  double decrease = 0.0;  ///< m(x + alpha d) - m(x)
};

struct LineSearchResult {
  double alpha = 0.0;  ///< theta^j, also when the search failed
  int backtracks = 0;  ///< j
  bool satisfied = false;
  double trial_value = 0.0;  ///< model value at the last trial point
  std::vector<LineSearchTrial> trace;
};

bool decrease_condition(DecreaseCondition condition, double trial_value, double base_value, double alpha,
                        double direction_norm, double eta);

/// Backtracking along d with alpha = theta^j, j = 0..max_backtracks.
///
/// `model` maps a point to the model value; it is called once per trial and
/// never at x itself (the caller supplies `base_value`). Throws
/// NumericFailure if a trial value is not finite and InvalidInput if d = 0.
LineSearchResult backtrack(const std::function<double(const Vector&)>& model, const Vector& x, double base_value,
                           const Vector& direction, const LineSearchConfig& config);

}  // namespace alas
