#include "alas/theory.hpp"

#include <algorithm>
#include <cmath>

#include "alas/errors.hpp"

namespace alas::theory {

namespace {

double positive_part(double t) { return std::max(t, 0.0); }

double log_base(double base, double t) { return std::log(t) / std::log(base); }

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("probability must lie in (0,1)");
}

}  // namespace

Lemma3Constants lemma3_constants(double theta, double eta, double L_H, double U_g, double epsilon) {
  if (!(theta > 0.0 && theta < 1.0) || !(eta > 0.0) || !(L_H > 0.0) || !(U_g > 0.0) || !(epsilon > 0.0))
    throw InvalidInput("lemma3_constants: need theta in (0,1) and positive eta, L_H, U_g, epsilon");

  const double denom = L_H + eta;
  Lemma3Constants k;
  k.c_nc = 3.0 * theta / denom;
  k.c_n = std::min(std::sqrt(2.0 / L_H), 3.0 * theta / denom);
  k.c_rn = std::min(1.0 / (1.0 + std::sqrt(1.0 + L_H / 2.0)), 6.0 * theta / denom);
  k.c = std::min({k.c_nc, k.c_n, k.c_rn});

  k.j_nc = positive_part(log_base(theta, 3.0 / denom));
  k.j_n = positive_part(log_base(theta, std::sqrt(3.0 / denom) * std::sqrt(epsilon) / std::sqrt(U_g)));
  k.j_rn = positive_part(log_base(theta, 6.0 / denom * epsilon / U_g));
  k.j_bar = std::max({k.j_nc, k.j_n, k.j_rn});
  return k;
}

double u_l(double U_g, double U_H, double L) {
  return U_g * std::max(U_H, std::sqrt(U_g)) + 0.5 * L * std::max(U_H * U_H, U_g);
}

double rho(double t, double q, double U_L, double eta) {
  if (!(t >= 0.0)) throw InvalidInput("rho: t must be nonnegative");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("rho: q must lie in [0,1]");
  const double numerator = (1.0 - q) * U_L;
  const double denominator = numerator + q * eta * t * t * t / 24.0;
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

double sample_bound(BoundKind kind, std::size_t N, const ProblemConstants& constants, double delta, double p) {
  require_probability(p);
  if (!(delta > 0.0)) throw InvalidInput("sample_bound: delta must be positive");
  if (N == 0) throw InvalidInput("sample_bound: N must be positive");
  const double n = static_cast<double>(N);

  switch (kind) {
    case BoundKind::Hessian:
      // Linear in 1/delta_H.
      return 16.0 * constants.L * constants.L / delta * std::log(2.0 * n / (1.0 - p)) / n;
    case BoundKind::Function:
      return 16.0 * constants.f_up * constants.f_up / delta * std::log(2.0 / (1.0 - p)) / n;
    case BoundKind::Gradient: {
      const double factor = 1.0 + std::sqrt(8.0 * std::log(1.0 / (1.0 - p)));
      return constants.U_g * constants.U_g / (delta * delta) * factor * factor / n;
    }
  }
  throw InvalidInput("sample_bound: unknown bound kind");
}

PiEpsilon pi_epsilon(double epsilon, double p, std::size_t N, const ProblemConstants& constants, double kappa_g,
                     double kappa_H, double theta, double eta) {
  require_probability(p);
  if (!(kappa_g > 0.0 && kappa_g < 1.0) || !(kappa_H > 0.0 && kappa_H < 1.0))
    throw InvalidInput("pi_epsilon: kappa_g and kappa_H must lie in (0,1)");
  if (N == 0) throw InvalidInput("pi_epsilon: N must be positive");

  const double n = static_cast<double>(N);
  const double c = lemma3_constants(theta, eta, constants.L_H, constants.U_g, epsilon).c;
  const double U_L = u_l(constants.U_g, constants.U_H, constants.L);

  PiEpsilon out;
  out.p_hat = (p + 3.0) / 4.0;
  const double tail = 1.0 - out.p_hat;
  const double factor = 1.0 + std::sqrt(8.0 * std::log(1.0 / tail));

  out.rho_term = rho(c * std::sqrt(epsilon), out.p_hat, U_L, eta);
  // Leading constant is 344 (smaller than 16 * 24).
  out.function_term = 344.0 * constants.f_up * constants.f_up / (eta * c * c * c * std::pow(epsilon, 1.5)) *
                      std::log(2.0 / tail) / n;
  out.gradient_term =
      constants.U_g * constants.U_g / (kappa_g * kappa_g * epsilon * epsilon) * factor * factor / n;
  out.hessian_term =
      16.0 * constants.L * constants.L / (kappa_H * std::sqrt(epsilon)) * std::log(2.0 * n / tail) / n;
  out.value = std::max({out.rho_term, out.function_term, out.gradient_term, out.hessian_term});
  return out;
}

ComplexityBounds complexity_report(const ComplexityInputs& in) {
  if (!(in.f0 >= in.f_low)) throw InvalidInput("complexity_report: f0 must be >= f_low");
  if (!(in.eta > 0.0) || !(in.c > 0.0) || !(in.epsilon > 0.0))
    throw InvalidInput("complexity_report: eta, c and epsilon must be positive");
  if (in.kappa_g < 0.0 || in.kappa_g >= 1.0 || in.kappa_H < 0.0 || in.kappa_H >= 1.0)
    throw InvalidInput("complexity_report: kappas must lie in [0,1)");

  ComplexityBounds out;
  const double gap = in.f0 - in.f_low;
  const double runs = static_cast<double>(in.J) + 1.0;
  out.c_hat = in.eta * in.c * in.c * in.c / 24.0;
  const double ratio_g = (1.0 - in.kappa_g) / (1.0 + in.kappa_g);
  const double ratio_h = (1.0 - in.kappa_H) * (1.0 - in.kappa_H) / ((1.0 + in.kappa_H) * (1.0 + in.kappa_H));
  out.epsilon_hat = std::min(ratio_g, ratio_h) * in.epsilon;

  if (in.regime == SamplingRegime::Full) {
    const double base = gap / out.c_hat * std::pow(in.epsilon, -1.5);
    out.iterations = base + 1.0;
    out.stationary_run_iterations = base + runs;
    out.derivative_evaluations = out.iterations;
    out.stopping_probability = 1.0;
  } else {
    require_probability(in.p);
    const double rho_eps = rho(in.c * std::sqrt(in.epsilon), in.p, in.U_L, in.eta);
    const double rho_hat = rho(in.c * std::sqrt(out.epsilon_hat), in.p, in.U_L, in.eta);
    out.iterations = gap / out.c_hat / rho_eps * std::pow(in.epsilon, -1.5) + 1.0;
    out.stationary_run_iterations =
        std::pow(in.p, -runs) * (gap / out.c_hat / rho_hat * std::pow(out.epsilon_hat, -1.5) + runs);
    out.derivative_evaluations = out.stationary_run_iterations;
    out.stopping_probability = stopping_probability(in.p, in.J);
  }
  out.function_evaluations = (1.0 + in.j_bar) * out.derivative_evaluations;
  return out;
}

Tolerances inflate_tolerances(double epsilon, double kappa_g, double kappa_H) {
  if (kappa_g < 0.0 || kappa_H < 0.0) throw InvalidInput("inflate_tolerances: kappas must be nonnegative");
  return {(1.0 + kappa_g) * epsilon, (1.0 + kappa_H) * std::sqrt(epsilon)};
}

double stopping_probability(double p, std::size_t J) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("stopping_probability: p must lie in [0,1]");
  return 1.0 - std::pow(1.0 - p, static_cast<double>(J) + 1.0);
}

}  // namespace alas::theory
