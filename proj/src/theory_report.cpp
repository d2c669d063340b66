#include "alas/theory_report.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alas/errors.hpp"
#include "alas/trace_io.hpp"

namespace alas::theory {

namespace {

const std::set<std::string> kFractionKeys{"sample_fraction.hessian", "sample_fraction.function",
                                          "sample_fraction.gradient", "pi_epsilon.rho_term",
                                          "pi_epsilon.function_term", "pi_epsilon.gradient_term",
                                          "pi_epsilon.hessian_term", "pi_epsilon"};

void add_bounds(std::vector<std::pair<std::string, double>>& out, const std::string& prefix,
                const ComplexityBounds& b) {
  out.emplace_back(prefix + ".iterations", b.iterations);
  out.emplace_back(prefix + ".stationary_run_iterations", b.stationary_run_iterations);
  out.emplace_back(prefix + ".derivative_evaluations", b.derivative_evaluations);
  out.emplace_back(prefix + ".function_evaluations", b.function_evaluations);
  out.emplace_back(prefix + ".stopping_probability", b.stopping_probability);
}

}  // namespace

std::vector<std::pair<std::string, double>> TheoryReport::entries() const {
  std::vector<std::pair<std::string, double>> out{
      {"input.L", inputs.constants.L},
      {"input.L_H", inputs.constants.L_H},
      {"input.U_g", inputs.constants.U_g},
      {"input.U_H", inputs.constants.U_H},
      {"input.f_up", inputs.constants.f_up},
      {"input.f_low", inputs.constants.f_low},
      {"input.f0", inputs.constants.f0},
      {"input.epsilon", inputs.epsilon},
      {"input.p", inputs.p},
      {"input.kappa_g", inputs.kappa_g},
      {"input.kappa_H", inputs.kappa_H},
      {"input.J", static_cast<double>(inputs.J)},
      {"input.N", static_cast<double>(inputs.N)},
      {"input.theta", inputs.theta},
      {"input.eta", inputs.eta},
      {"c_nc", lemma3.c_nc},
      {"c_n", lemma3.c_n},
      {"c_rn", lemma3.c_rn},
      {"c", lemma3.c},
      {"j_nc", lemma3.j_nc},
      {"j_n", lemma3.j_n},
      {"j_rn", lemma3.j_rn},
      {"j_bar", lemma3.j_bar},
      {"U_L", U_L},
      {"c_hat", c_hat},
      {"epsilon_hat", subsampled.epsilon_hat},
      {"rho(c*sqrt(eps),p)", rho_at_c_sqrt_eps},
      {"sample_fraction.hessian", hessian_fraction},
      {"sample_fraction.function", function_fraction},
      {"sample_fraction.gradient", gradient_fraction},
      {"pi_epsilon.p_hat", pi.p_hat},
      {"pi_epsilon.rho_term", pi.rho_term},
      {"pi_epsilon.function_term", pi.function_term},
      {"pi_epsilon.gradient_term", pi.gradient_term},
      {"pi_epsilon.hessian_term", pi.hessian_term},
      {"pi_epsilon", pi.value},
  };
  add_bounds(out, "full", full);
  add_bounds(out, "subsampled", subsampled);
  out.emplace_back("inflated.gradient_tolerance", inflated.gradient);
  out.emplace_back("inflated.curvature_tolerance", inflated.curvature);
  return out;
}

TheoryReport make_theory_report(const TheoryInputs& in) {
  if (!(in.p > 0.0 && in.p < 1.0)) throw ConfigError("theory: p must lie in (0,1)");
  try {
    TheoryReport r;
    r.inputs = in;
    const ProblemConstants& k = in.constants;
    r.lemma3 = lemma3_constants(in.theta, in.eta, k.L_H, k.U_g, in.epsilon);
    r.U_L = u_l(k.U_g, k.U_H, k.L);
    r.rho_at_c_sqrt_eps = rho(r.lemma3.c * std::sqrt(in.epsilon), in.p, r.U_L, in.eta);

    const double c = r.lemma3.c;
    r.hessian_fraction = sample_bound(BoundKind::Hessian, in.N, k, in.kappa_H * std::sqrt(in.epsilon), in.p);
    r.function_fraction =
        sample_bound(BoundKind::Function, in.N, k, in.eta / 24.0 * c * c * c * std::pow(in.epsilon, 1.5), in.p);
    r.gradient_fraction = sample_bound(BoundKind::Gradient, in.N, k, in.kappa_g * in.epsilon, in.p);
    r.pi = pi_epsilon(in.epsilon, in.p, in.N, k, in.kappa_g, in.kappa_H, in.theta, in.eta);

    ComplexityInputs ci;
    ci.f0 = k.f0;
    ci.f_low = k.f_low;
    ci.eta = in.eta;
    ci.c = c;
    ci.epsilon = in.epsilon;
    ci.p = in.p;
    ci.J = in.J;
    ci.kappa_g = in.kappa_g;
    ci.kappa_H = in.kappa_H;
    ci.j_bar = r.lemma3.j_bar;
    ci.U_L = r.U_L;
    ci.regime = SamplingRegime::Full;
    r.full = complexity_report(ci);
    ci.regime = SamplingRegime::Subsampled;
    r.subsampled = complexity_report(ci);
    r.c_hat = r.full.c_hat;
    r.inflated = inflate_tolerances(in.epsilon, in.kappa_g, in.kappa_H);
    return r;
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("theory: ") + e.what());
  }
}

std::string render_text(const TheoryReport& report) {
  std::ostringstream out;
  for (const auto& [name, value] : report.entries()) {
    out << name << ": " << format_double(value);
    if (kFractionKeys.count(name) && value > 1.0) out << " (clamped to full sampling)";
    out << '\n';
  }
  return out.str();
}

std::string render_json(const TheoryReport& report) {
  nlohmann::ordered_json j;
  nlohmann::json clamped = nlohmann::json::array();
  for (const auto& [name, value] : report.entries()) {
    j[name] = value;
    if (kFractionKeys.count(name) && value > 1.0) clamped.push_back(name);
  }
  j["clamped"] = clamped;
  return j.dump(2);
}

}  // namespace alas::theory
