#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "alas/theory.hpp"

namespace alas::theory {

struct TheoryInputs {
  ProblemConstants constants;
  double epsilon = 1e-5;
  double p = 0.9;
  double kappa_g = 0.5;
  double kappa_H = 0.5;
  std::size_t J = 0;
  std::size_t N = 10000;
  double theta = 0.9;
  double eta = 1e-2;
};

/// Every derived constant and bound for one set of inputs, as ordered
/// (name, value) pairs so that text and JSON renderings share one source.
struct TheoryReport {
  TheoryInputs inputs;
  Lemma3Constants lemma3;
  double U_L = 0.0;
  double c_hat = 0.0;
  double rho_at_c_sqrt_eps = 0.0;
  double hessian_fraction = 0.0;   ///< delta_H = kappa_H eps^{1/2}
  double function_fraction = 0.0;  ///< delta_f = (eta/24) c^3 eps^{3/2}
  double gradient_fraction = 0.0;  ///< delta_g = kappa_g eps
  PiEpsilon pi;
  ComplexityBounds full;
  ComplexityBounds subsampled;
  Tolerances inflated;

  std::vector<std::pair<std::string, double>> entries() const;
};

/// Throws ConfigError if p is not in (0,1) or any input is out of range.
TheoryReport make_theory_report(const TheoryInputs& inputs);

/// "name: value" lines; sample fractions above 1 carry "(clamped to full sampling)".
std::string render_text(const TheoryReport& report);
/// JSON object with the same names and values plus a "clamped" list.
std::string render_json(const TheoryReport& report);

}  // namespace alas::theory
