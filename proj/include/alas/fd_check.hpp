#pragma once

#include "alas/problem.hpp"

namespace alas {

struct DerivativeErrors {
  double gradient = 0.0;  ///< max_i |g_i - fd_i| / max(1, |fd_i|)
  double hessian = 0.0;   ///< same, entrywise, for the Hessian
};

/// Compares the full objective's analytic gradient with central differences of
/// f, and its Hessian with central differences of the gradient, using step h.
DerivativeErrors finite_difference_check(const FiniteSumProblem& problem, const Vector& x, double h = 1e-5,
                                         EvalOptions options = {});

}  // namespace alas
