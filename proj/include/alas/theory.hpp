#pragma once

#include <cstddef>

namespace alas::theory {

/// Problem-dependent bounds the caller supplies (they are not estimated here).
struct ProblemConstants {
  double L = 1.0;        ///< Lipschitz constant of the component gradients
  double L_H = 1.0;      ///< Lipschitz constant of the Hessian
  double U_g = 1.0;      ///< bound on gradient norms
  double U_H = 1.0;      ///< bound on Hessian norms
  double f_up = 1.0;     ///< bound on component values
  double f_low = 0.0;    ///< lower bound on the objective
  double f0 = 1.0;       ///< objective value at the starting point
};

/// Step-length constants of the backtracking analysis.
///
/// c_* bound alpha ||d|| / eps^{1/2} from below for negative curvature, Newton
/// and regularized Newton steps; j_* bound the number of backtracks (real
/// valued, clamped at zero).
struct Lemma3Constants {
  double c_nc = 0.0, c_n = 0.0, c_rn = 0.0, c = 0.0;
  double j_nc = 0.0, j_n = 0.0, j_rn = 0.0, j_bar = 0.0;
};

Lemma3Constants lemma3_constants(double theta, double eta, double L_H, double U_g, double epsilon);

/// U_g max{U_H, U_g^{1/2}} + (L/2) max{U_H^2, U_g}.
double u_l(double U_g, double U_H, double L);

/// Sample-fraction threshold (1-q) U_L / ((1-q) U_L + q eta t^3 / 24).
/// Defined as 0 at t = 0, q = 1. Throws InvalidInput for t < 0 or q outside [0,1].
double rho(double t, double q, double U_L, double eta);

enum class BoundKind { Hessian, Function, Gradient };

/// Uniform with-replacement sample fraction that makes the corresponding
/// estimate delta-accurate with probability p. Returned unclamped (may exceed 1).
/// Throws InvalidInput for p outside (0,1), delta <= 0 or N = 0.
double sample_bound(BoundKind kind, std::size_t N, const ProblemConstants& constants, double delta, double p);

/// Sample fraction pi(eps) that makes the model sequence p-probabilistically
/// accurate with delta_f = (eta/24) c^3 eps^{3/2}, delta_g = kappa_g eps and
/// delta_H = kappa_H eps^{1/2}.
struct PiEpsilon {
  double p_hat = 0.0;
  double rho_term = 0.0;
  double function_term = 0.0;
  double gradient_term = 0.0;
  double hessian_term = 0.0;
  double value = 0.0;  ///< max of the four terms
};

PiEpsilon pi_epsilon(double epsilon, double p, std::size_t N, const ProblemConstants& constants, double kappa_g,
                     double kappa_H, double theta, double eta);

enum class SamplingRegime { Full, Subsampled };

struct ComplexityInputs {
  double f0 = 1.0;
  double f_low = 0.0;
  double eta = 1e-2;
  double c = 0.0;  ///< from lemma3_constants
  double epsilon = 1e-5;
  double p = 0.9;
  SamplingRegime regime = SamplingRegime::Full;
  std::size_t J = 0;
  double kappa_g = 0.5;
  double kappa_H = 0.5;
  double j_bar = 0.0;
  double U_L = 1.0;  ///< from u_l, needed for the subsampled regime
};

struct ComplexityBounds {
  double c_hat = 0.0;        ///< eta c^3 / 24
  double epsilon_hat = 0.0;  ///< min{(1-kg)/(1+kg), (1-kH)^2/(1+kH)^2} eps
  double iterations = 0.0;   ///< bound on E[T_eps]
  double stationary_run_iterations = 0.0;  ///< bound on E[T^m_{eps,J}]
  double derivative_evaluations = 0.0;
  double function_evaluations = 0.0;
  double stopping_probability = 0.0;  ///< 1 - (1-p)^{J+1}
};

ComplexityBounds complexity_report(const ComplexityInputs& in);

/// Stationarity tolerances certified for the true function by an accurate
/// model: ((1 + kappa_g) eps, (1 + kappa_H) eps^{1/2}).
struct Tolerances {
  double gradient = 0.0;
  double curvature = 0.0;
};

Tolerances inflate_tolerances(double epsilon, double kappa_g, double kappa_H);

/// 1 - (1-p)^{J+1}.
double stopping_probability(double p, std::size_t J);

}  // namespace alas::theory
