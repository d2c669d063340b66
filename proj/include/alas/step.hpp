#pragma once

#include <optional>
#include <string_view>

#include "alas/linalg.hpp"
#include "alas/types.hpp"

namespace alas {

enum class StepKind {
  ZeroStep,
  NegativeCurvature,
  Newton,
  RegularizedNewton,
  GradientNegativeCurvature,  ///< practical policy only
  ScaledGradient,             ///< practical policy only
};

std::string_view to_string(StepKind kind);
/// Inverse of to_string; throws InvalidInput for an unknown name.
StepKind step_kind_from_string(std::string_view name);

/// A chosen search direction together with the quantities that selected it.
struct StepDecision {
  StepKind kind = StepKind::ZeroStep;
  Vector direction;
  std::optional<double> lambda_min;
  std::optional<Vector> eigenvector;
  std::optional<double> rayleigh;
  double tolerance = 0.0;
};

/// g^T H g / ||g||^2. Throws InvalidInput when g = 0.
double rayleigh_quotient(const Matrix& h, const Vector& g);

/// Builds the direction of the given kind.
///
/// - NegativeCurvature: `eigen` scaled to norm -lambda, flipped if it points
///   uphill (v^T g > 0); v^T g = 0 keeps the eigensolver sign.
/// - Newton: solves H d = -g.
/// - RegularizedNewton: solves (H + (||g||^{1/2} + eps^{1/2}) I) d = -g.
/// - GradientNegativeCurvature: (R / ||g||) g.
/// - ScaledGradient: -g / ||g||^{1/2}.
/// - ZeroStep: 0.
///
/// `rayleigh` is only read for GradientNegativeCurvature, `eigen` only for
/// NegativeCurvature. Throws InvalidInput when a kind's precondition is
/// violated and NumericFailure when a Cholesky factorization fails.
Vector compute_direction(StepKind kind, const Matrix& h, const Vector& g, const EigenPair* eigen,
                         std::optional<double> rayleigh, double epsilon);

/// Step selection of the analysed method: negative curvature when
/// lambda < -eps^{1/2}, Newton when lambda > ||g||^{1/2}, regularized Newton
/// otherwise, zero step at a second-order point of the model.
StepDecision select_step_theoretical(const Vector& g, const Matrix& h, double epsilon);

/// Step selection used in practice: gradient-based steps first, chosen from the
/// Rayleigh quotient of H along g, then the eigenvalue branches with the
/// negative-curvature threshold -||g||^{1/2}. When g = 0 the Rayleigh branches
/// are skipped.
StepDecision select_step_practical(const Vector& g, const Matrix& h, double epsilon);

}  // namespace alas
