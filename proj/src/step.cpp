#include "alas/step.hpp"

#include <array>
#include <cmath>
#include <string>

#include "alas/errors.hpp"

namespace alas {

namespace {

constexpr std::array<std::pair<StepKind, std::string_view>, 6> kNames{{
    {StepKind::ZeroStep, "zero"},
    {StepKind::NegativeCurvature, "negative_curvature"},
    {StepKind::Newton, "newton"},
    {StepKind::RegularizedNewton, "regularized_newton"},
    {StepKind::GradientNegativeCurvature, "gradient_negative_curvature"},
    {StepKind::ScaledGradient, "scaled_gradient"},
}};

void check_inputs(const Vector& g, const Matrix& h, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("step selection: epsilon must be positive");
  if (h.rows() != g.size() || h.cols() != g.size()) throw InvalidInput("step selection: dimension mismatch");
}

// Eigenvalue branches shared by both policies; they differ only in the
// negative-curvature threshold.
StepDecision eigen_branches(StepDecision decision, const Vector& g, const Matrix& h, double epsilon,
                            double negative_threshold) {
  const EigenPair eig = min_eigenpair(h);
  const double gnorm = g.norm();
  const double sqrt_g = std::sqrt(gnorm);
  decision.lambda_min = eig.value;

  if (eig.value >= -std::sqrt(epsilon) && gnorm == 0.0) {
    decision.kind = StepKind::ZeroStep;
  } else if (eig.value < negative_threshold) {
    decision.kind = StepKind::NegativeCurvature;
    decision.eigenvector = eig.vector;
  } else if (eig.value > sqrt_g) {
    decision.kind = StepKind::Newton;
  } else {
    decision.kind = StepKind::RegularizedNewton;
  }
  decision.direction = compute_direction(decision.kind, h, g, &eig, decision.rayleigh, epsilon);
  return decision;
}

}  // namespace

std::string_view to_string(StepKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

StepKind step_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw InvalidInput("unknown step kind '" + std::string(name) + "'");
}

double rayleigh_quotient(const Matrix& h, const Vector& g) {
  if (h.rows() != g.size() || h.cols() != g.size()) throw InvalidInput("rayleigh_quotient: dimension mismatch");
  const double gg = g.squaredNorm();
  if (gg == 0.0) throw InvalidInput("rayleigh_quotient: zero vector");
  return g.dot(h * g) / gg;
}

Vector compute_direction(StepKind kind, const Matrix& h, const Vector& g, const EigenPair* eigen,
                         std::optional<double> rayleigh, double epsilon) {
  const auto n = g.size();
  if (h.rows() != n || h.cols() != n) throw InvalidInput("compute_direction: dimension mismatch");
  const double gnorm = g.norm();

  switch (kind) {
    case StepKind::ZeroStep:
      return Vector::Zero(n);

    case StepKind::NegativeCurvature: {
      if (eigen == nullptr || !(eigen->value < 0.0) || eigen->vector.size() != n)
        throw InvalidInput("compute_direction: negative curvature needs a negative eigenpair");
      Vector d = (-eigen->value / eigen->vector.norm()) * eigen->vector;
      if (d.dot(g) > 0.0) d = -d;
      return d;
    }

    case StepKind::Newton: {
      // Positive definiteness is checked by the factorization itself.
      return spd_solve(h, -g);
    }

    case StepKind::RegularizedNewton: {
      if (!(epsilon > 0.0)) throw InvalidInput("compute_direction: epsilon must be positive");
      const double shift = std::sqrt(gnorm) + std::sqrt(epsilon);
      Matrix shifted = h;
      shifted.diagonal().array() += shift;
      return spd_solve(shifted, -g);
    }

    case StepKind::GradientNegativeCurvature: {
      if (!rayleigh || !(*rayleigh < 0.0) || gnorm == 0.0)
        throw InvalidInput("compute_direction: gradient negative curvature needs R < 0 and g != 0");
      return (*rayleigh / gnorm) * g;
    }

    case StepKind::ScaledGradient: {
      if (gnorm == 0.0) throw InvalidInput("compute_direction: scaled gradient needs g != 0");
      return -g / std::sqrt(gnorm);
    }
  }
  throw InvalidInput("compute_direction: unknown step kind");
}

StepDecision select_step_theoretical(const Vector& g, const Matrix& h, double epsilon) {
  check_inputs(g, h, epsilon);
  StepDecision decision;
  decision.tolerance = epsilon;
  return eigen_branches(std::move(decision), g, h, epsilon, -std::sqrt(epsilon));
}

StepDecision select_step_practical(const Vector& g, const Matrix& h, double epsilon) {
  check_inputs(g, h, epsilon);
  StepDecision decision;
  decision.tolerance = epsilon;

  const double gnorm = g.norm();
  if (gnorm > 0.0) {
    const double sqrt_g = std::sqrt(gnorm);
    const double r = rayleigh_quotient(h, g);
    decision.rayleigh = r;
    if (r < -sqrt_g) {
      decision.kind = StepKind::GradientNegativeCurvature;
      decision.direction = compute_direction(decision.kind, h, g, nullptr, r, epsilon);
      return decision;
    }
    if (r < sqrt_g && gnorm >= epsilon) {
      decision.kind = StepKind::ScaledGradient;
      decision.direction = compute_direction(decision.kind, h, g, nullptr, r, epsilon);
      return decision;
    }
  }
  return eigen_branches(std::move(decision), g, h, epsilon, -std::sqrt(gnorm));
}

}  // namespace alas
