#include "alas/fd_check.hpp"

#include <algorithm>
#include <cmath>

#include "alas/errors.hpp"

namespace alas {

namespace {

double relative_error(double analytic, double reference) {
  return std::abs(analytic - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

DerivativeErrors finite_difference_check(const FiniteSumProblem& problem, const Vector& x, double h,
                                         EvalOptions options) {
  if (!(h > 0.0)) throw InvalidInput("finite_difference_check: h must be positive");
  const SubsampledModel at_x = evaluate_full(problem, x, Order::Hessian, options);

  DerivativeErrors errors;
  Vector probe = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    probe(j) = x(j) + h;
    const SubsampledModel plus = evaluate_full(problem, probe, Order::Gradient, options);
    probe(j) = x(j) - h;
    const SubsampledModel minus = evaluate_full(problem, probe, Order::Gradient, options);
    probe(j) = x(j);

    const double fd_grad = (plus.value - minus.value) / (2.0 * h);
    errors.gradient = std::max(errors.gradient, relative_error(at_x.gradient(j), fd_grad));

    const Vector fd_column = (plus.gradient - minus.gradient) / (2.0 * h);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      errors.hessian = std::max(errors.hessian, relative_error(at_x.hessian(i, j), fd_column(i)));
  }
  return errors;
}

}  // namespace alas
