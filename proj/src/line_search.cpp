#include "alas/line_search.hpp"

#include <cmath>

#include "alas/errors.hpp"

namespace alas {

void LineSearchConfig::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidInput("line search: theta must lie in (0,1)");
  if (!(eta > 0.0)) throw InvalidInput("line search: eta must be positive");
  if (max_backtracks < 1) throw InvalidInput("line search: max_backtracks must be at least 1");
}

bool decrease_condition(DecreaseCondition condition, double trial_value, double base_value, double alpha,
                        double direction_norm, double eta) {
  const double step = alpha * direction_norm;
  const double rhs = condition == DecreaseCondition::Cubic ? -(eta / 6.0) * step * step * step
                                                           : -(eta / 2.0) * step * step;
  return trial_value - base_value <= rhs;
}

LineSearchResult backtrack(const std::function<double(const Vector&)>& model, const Vector& x, double base_value,
                           const Vector& direction, const LineSearchConfig& config) {
  config.validate();
  const double dnorm = direction.norm();
  if (!(dnorm > 0.0)) throw InvalidInput("backtrack: zero direction");

  LineSearchResult result;
  for (int j = 0; j <= config.max_backtracks; ++j) {
    const double alpha = std::pow(config.theta, j);
    const double value = model(x + alpha * direction);
    if (!std::isfinite(value)) throw NumericFailure("backtrack: non-finite model value at trial " + std::to_string(j));
    result.trace.push_back({alpha, value - base_value});
    result.alpha = alpha;
    result.backtracks = j;
    result.trial_value = value;
    if (decrease_condition(config.condition, value, base_value, alpha, dnorm, config.eta)) {
      result.satisfied = true;
      return result;
    }
  }
  return result;
}

}  // namespace alas
