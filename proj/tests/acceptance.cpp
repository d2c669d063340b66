// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alas/driver.hpp"
#include "alas/experiment.hpp"
#include "alas/fd_check.hpp"
#include "alas/mlp.hpp"
#include "alas/teacher.hpp"
#include "alas/test_functions.hpp"
#include "alas/theory.hpp"
#include "alas/trace_io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace alas;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// 1. Analytic MLP derivatives against central finite differences.
Outcome derivative_correctness() {
  const auto start = Clock::now();
  const char* arches[] = {"22-4-1", "4-4-1", "2-1-1"};
  double worst_g = 0.0, worst_h = 0.0;
  for (int m = 0; m < 20; ++m) {
    const auto spec = MlpSpec::parse(arches[m % 3]);
    std::mt19937_64 rng(1000 + m);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto data = std::make_shared<Dataset>();
    const Eigen::Index n = 40, d = static_cast<Eigen::Index>(spec.input_width());
    data->features.resize(n, d);
    data->labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) data->features(i, j) = u(rng);
      data->labels(i) = 2.0 * u(rng) - 1.0;
    }
    const MlpProblem problem(spec, data);
    const auto e = finite_difference_check(problem, mlp_initial_parameters(spec, static_cast<std::uint64_t>(m)));
    worst_g = std::max(worst_g, e.gradient);
    worst_h = std::max(worst_h, e.hessian);
  }
  const double elapsed = seconds_since(start);
  return {worst_g <= 1e-5 && worst_h <= 1e-4 && elapsed < 30.0,
          "20 nets, max grad err " + fmt(worst_g) + ", max Hessian err " + fmt(worst_h) + ", " + fmt(elapsed) + " s"};
}

// 2. Step-engine residuals, branch predicates and the direction-norm bound.
Outcome step_residuals() {
  std::mt19937_64 rng(42);
  std::size_t violations = 0;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    const auto s = properties::random_step_instance(rng);
    for (auto policy : {properties::PolicyKind::Theoretical, properties::PolicyKind::Practical}) {
      for (const auto& v : properties::check_step(s, policy)) {
        if (violations++ == 0) first = v;
      }
    }
  }
  return {violations == 0, "10000 instances x 2 policies, " + std::to_string(violations) + " violations" +
                               (first.empty() ? "" : " (first: " + first + ")")};
}

// 3. Line-search minimality and the step-length lower bound.
Outcome line_search() {
  std::mt19937_64 rng(17);
  std::size_t violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto phi = properties::random_profile(rng);
    for (auto cond : {DecreaseCondition::Cubic, DecreaseCondition::Quadratic}) {
      LineSearchConfig cfg;
      cfg.condition = cond;
      violations += properties::check_line_search(phi, cfg).size();
    }
  }
  const auto c_of = [](double theta, double eta, double lh, double eps) {
    return theory::lemma3_constants(theta, eta, lh, 1.0, eps).c;
  };
  const auto jbar_of = [](double theta, double eta, double lh, double ug, double eps) {
    return theory::lemma3_constants(theta, eta, lh, ug, eps).j_bar;
  };
  std::size_t lemma_violations = 0, under_event = 0;
  std::string first;
  for (int i = 0; i < 3000; ++i) {
    const auto out = properties::check_lemma3_instance(rng, 0.9, 0.01, c_of, jbar_of);
    under_event += out.under_event ? 1 : 0;
    for (const auto& v : out.violations)
      if (lemma_violations++ == 0) first = v;
  }
  return {violations == 0 && lemma_violations == 0 && under_event > 0,
          "1000 profiles x 2 conditions: " + std::to_string(violations) + " minimality violations; " +
              std::to_string(under_event) + " cubic-family steps under the event: " + std::to_string(lemma_violations) +
              " bound violations" + (first.empty() ? "" : " (first: " + first + ")")};
}

// 4. Full-sample convergence on a quadratic and saddle escape.
Outcome deterministic_regime() {
  Vector d(2);
  d << 4, 2;
  const auto quad = QuadraticProblem::diagonal(d);
  Vector x0(2);
  x0 << 1, 1;
  const RunTrace t = run(quad, x0, RunConfig::theoretical());
  const double gnorm = evaluate_full(quad, t.final_point, Order::Gradient).gradient.norm();
  const bool quad_ok =
      t.termination == Termination::JConsecutiveStationary && t.records.size() <= 3 && gnorm <= 1e-12;

  Vector s(2);
  s << 1, -1;
  const auto saddle = QuadraticProblem::diagonal(s);
  Vector y0(2);
  y0 << 0, 1e-4;
  RunConfig cfg = RunConfig::theoretical();
  cfg.stopping.max_iterations = 1;
  const RunTrace u = run(saddle, y0, cfg);
  const double f0 = evaluate_full(saddle, y0, Order::Value).value;
  const double f1 = evaluate_full(saddle, u.final_point, Order::Value).value;
  const bool saddle_ok = u.records.front().kind == StepKind::NegativeCurvature && f1 < f0;
  return {quad_ok && saddle_ok, "quadratic: " + std::to_string(t.records.size()) + " iterations, ||grad f|| = " +
                                    fmt(gnorm) + "; saddle: first step " +
                                    std::string(to_string(u.records.front().kind)) + ", f " + fmt(f0) + " -> " +
                                    fmt(f1)};
}

// 5. Theory arithmetic against long-double evaluation, plus monotonicity grids.
Outcome theory_arithmetic() {
  std::vector<std::string> bad;
  auto close = [&](const std::string& name, double got, long double ref) {
    const double r = static_cast<double>(std::fabs((got - ref) / ref));
    if (!(r <= 1e-4)) bad.push_back(name + " rel err " + fmt(r));
  };
  const auto k = theory::lemma3_constants(0.9, 0.01, 1.0, 1.0, 1e-5);
  close("c", k.c, oracle::c_all(0.9L, 0.01L, 1.0L));
  close("c vs 0.44949", k.c, 0.44949L);
  theory::ProblemConstants pc;
  const double hb = theory::sample_bound(theory::BoundKind::Hessian, 10000, pc, 0.1, 0.9);
  close("hessian bound", hb, oracle::hessian_fraction(1e4L, 1.0L, 0.1L, 0.9L));
  close("hessian bound vs 0.19530", hb, 0.19530L);
  close("rho balanced", theory::rho(1.0, 0.5, 1.0, 24.0), oracle::rho(1.0L, 0.5L, 1.0L, 24.0L));
  close("rho vs 0.5", theory::rho(1.0, 0.5, 1.0, 24.0), 0.5L);
  theory::ComplexityInputs in;
  in.c = 0.44949;
  in.epsilon = 0.01;
  const double it = theory::complexity_report(in).iterations;
  close("E[T_eps]", it, oracle::full_iteration_bound(1.0L, 0.01L, 0.44949L, 0.01L));
  close("E[T_eps] vs 2.6426e7", it, 2.6426e7L);

  std::size_t grid = 0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      const double t = 10.0 * i / 99.0, q = j / 99.0, v = theory::rho(t, q, 2.0, 0.01);
      if (i > 0 && v > theory::rho(10.0 * (i - 1) / 99.0, q, 2.0, 0.01)) ++grid;
      if (j > 0 && v > theory::rho(t, (j - 1) / 99.0, 2.0, 0.01)) ++grid;
    }
  for (auto kind : {theory::BoundKind::Hessian, theory::BoundKind::Function, theory::BoundKind::Gradient})
    for (int i = 2; i < 60; ++i)
      for (int j = 2; j < 60; ++j) {
        const double delta = 0.02 * i, p = j / 60.0;
        const double v = theory::sample_bound(kind, 5000, pc, delta, p);
        if (v > theory::sample_bound(kind, 5000, pc, 0.02 * (i - 1), p)) ++grid;
        if (v < theory::sample_bound(kind, 5000, pc, delta, (j - 1) / 60.0)) ++grid;
      }
  for (double p : {0.1, 0.5, 0.9}) {
    double prev = -1.0;
    for (int e = 0; e < 60; ++e) {
      const double eps = std::pow(10.0, -0.1 * e);  // decreasing
      const auto pe = theory::pi_epsilon(eps, p, 100000, pc, 0.5, 0.5, 0.9, 0.01);
      if (pe.value < std::max({pe.rho_term, pe.function_term, pe.gradient_term, pe.hessian_term})) ++grid;
      if (pe.value < prev) ++grid;
      prev = pe.value;
    }
  }
  if (grid > 0) bad.push_back(std::to_string(grid) + " monotonicity violations");
  return {bad.empty(), bad.empty() ? "worked values within 1e-4; rho, sample-bound and pi(eps) grids monotone"
                                   : bad.front()};
}

// 6. J-consecutive stopping and Step 7' idempotence.
Outcome stopping_rule() {
  Vector d(2);
  d << 4, 2;
  const auto quad = QuadraticProblem::diagonal(d);
  Vector x0(2);
  x0 << 3, -2;
  RunConfig cfg = RunConfig::theoretical();
  cfg.stopping.consecutive_stationary = 2;
  const RunTrace t = run(quad, x0, cfg);
  std::size_t trailing = 0;
  for (auto it = t.records.rbegin(); it != t.records.rend() && it->model_stationary; ++it) ++trailing;
  const bool block_ok = t.termination == Termination::JConsecutiveStationary && trailing == 3;

  // Components with a common minimizer at 0 so that subsampled models become
  // stationary there as well.
  std::mt19937_64 rng(5);
  std::vector<QuadraticProblem::Component> comps;
  for (int i = 0; i < 12; ++i) {
    Matrix a = testing_helpers::random_symmetric(rng, 3);
    a = a * a.transpose() + 0.1 * Matrix::Identity(3, 3);
    comps.push_back({a, Vector::Zero(3), 0.0});
  }
  const QuadraticProblem shared(std::move(comps));
  RunConfig prime = RunConfig::practical();
  prime.acceptance = Acceptance::Step7Prime;
  prime.sampling = {SamplingMode::WithReplacement, 0.25};
  Sampler sampler(prime.sampling.mode, shared.size(), prime.sampling.fraction, 9);
  AlasState st{.x = Vector::Constant(3, 0.5)};
  std::size_t stationary = 0, moved = 0;
  for (int k = 0; k < 200; ++k) {
    const Vector before = st.x;
    const auto rec = alas_step(st, shared, sampler.next(), prime);
    if (rec.model_stationary) {
      ++stationary;
      if (!std::equal(before.data(), before.data() + before.size(), st.x.data())) ++moved;
    }
  }
  return {block_ok && stationary > 0 && moved == 0,
          "J=2: " + std::to_string(trailing) + " trailing stationary of " + std::to_string(t.records.size()) +
              " records; Step7Prime: " + std::to_string(stationary) + " stationary iterations, " +
              std::to_string(moved) + " moved"};
}

// 7. NN1 teacher task: practical ALAS at 5% versus SGD.
Outcome desk_experiment() {
  const auto start = Clock::now();
  const auto data = std::make_shared<Dataset>(teacher_generate(TeacherSpec::nn1(5000, 0)));
  const auto spec = MlpSpec::parse("2-1-1");
  const MlpProblem problem(spec, data);
  RunConfig cfg = RunConfig::practical();
  cfg.sampling = {SamplingMode::EpochPartition, 0.05};
  cfg.stopping.max_iterations = 2000;
  cfg.stopping.consecutive_stationary = 1000000000;
  cfg.full_metrics_every = 0;
  int wins = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const Vector x0 = mlp_initial_parameters(spec, seed);
    auto final_loss = [&](const std::function<RunTrace()>& go) {
      try {
        return evaluate_full(problem, go().final_point, Order::Value).value;
      } catch (const RunAborted&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    const double alas = final_loss([&] { return run(problem, x0, cfg); });
    const double sgd1 = final_loss([&] { return sgd_run(problem, x0, 1.0, cfg); });
    const double sgd01 = final_loss([&] { return sgd_run(problem, x0, 0.1, cfg); });
    const bool win = alas < sgd1 && alas < sgd01;
    wins += win ? 1 : 0;
    detail << " s" << seed << ":" << fmt(alas) << "/" << fmt(sgd1) << "/" << fmt(sgd01) << (win ? "+" : "-");
  }
  const double elapsed = seconds_since(start);
  return {wins >= 3 && elapsed < 300.0, std::to_string(wins) + "/5 seeds ALAS < SGD(1.0), SGD(0.1) [ALAS/SGD1/SGD0.1]" +
                                            detail.str() + ", " + fmt(elapsed) + " s"};
}

// 8. With the full sample, model and function stationarity coincide.
Outcome full_sample_equivalence() {
  std::size_t iterations = 0, stationary = 0, mismatches = 0;
  auto check = [&](const FiniteSumProblem& p, const Vector& x0, RunConfig cfg) {
    cfg.track_function_stationarity = true;
    cfg.sampling.fraction = 1.0;
    const RunTrace t = run(p, x0, cfg);
    for (const auto& r : t.records) {
      ++iterations;
      stationary += r.model_stationary ? 1 : 0;
      if (!r.function_stationary || *r.function_stationary != r.model_stationary) ++mismatches;
    }
  };
  const auto data = std::make_shared<Dataset>(teacher_generate(TeacherSpec::nn1(300, 1)));
  const auto spec = MlpSpec::parse("2-1-1");
  const MlpProblem mlp(spec, data);
  for (auto base : {RunConfig::theoretical(), RunConfig::practical()}) {
    RunConfig cfg = base;
    cfg.stopping.max_iterations = 150;
    cfg.stopping.consecutive_stationary = 2;
    cfg.epsilon = 1e-4;
    check(mlp, mlp_initial_parameters(spec, 2), cfg);
    check(testing_helpers::nonconvex_sum(20, 3), Vector::Constant(3, 1.0), cfg);
    Vector d(2);
    d << 4, 2;
    check(QuadraticProblem::diagonal(d), Vector::Constant(2, 1.0), cfg);
    check(*builtin_problem("two-wells"), builtin_start("two-wells"), cfg);
  }
  return {mismatches == 0 && stationary > 0, std::to_string(iterations) + " iterations (" +
                                                 std::to_string(stationary) + " stationary), " +
                                                 std::to_string(mismatches) + " flag mismatches"};
}

// 9. Byte-identical traces across repeats and thread counts.
Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / "alas_acceptance_repro";
  fs::remove_all(root);
  ExperimentConfig c;
  c.source.teacher = TeacherSpec::nn1(3000, 4);
  c.architecture = MlpSpec::parse("2-4-1");
  c.algorithms = {Algorithm::AlasPractical, Algorithm::AlasTheoretical, Algorithm::Sgd};
  c.learning_rates = {0.3};
  c.fractions = {0.1, 1.0};
  c.seeds = {1, 2};
  c.run.stopping.max_iterations = 25;
  c.run.stopping.consecutive_stationary = 1000000;
  c.run.full_metrics_every = 5;
  c.run.track_function_stationarity = false;

  std::vector<std::vector<std::string>> contents;
  std::vector<std::string> names;
  const unsigned thread_counts[] = {1, 1, 2, 4};
  for (std::size_t r = 0; r < std::size(thread_counts); ++r) {
    c.run.eval.threads = thread_counts[r];
    c.output_dir = (root / ("run" + std::to_string(r))).string();
    const auto result = run_experiment(c);
    std::vector<std::string> files;
    for (const auto& f : result.trace_files) {
      std::ifstream in(f, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      files.push_back(s.str());
    }
    contents.push_back(std::move(files));
  }
  std::size_t differing = 0;
  for (std::size_t r = 1; r < contents.size(); ++r)
    for (std::size_t f = 0; f < contents[0].size(); ++f) differing += contents[r][f] != contents[0][f] ? 1 : 0;
  const std::size_t per_run = contents[0].size();
  fs::remove_all(root);
  return {differing == 0 && per_run == 12,
          std::to_string(per_run) + " traces x 4 repeats (threads 1,1,2,4), " + std::to_string(differing) +
              " differing files"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "derivative correctness", derivative_correctness},
      {2, "step-engine residuals", step_residuals},
      {3, "line-search minimality and step bound", line_search},
      {4, "deterministic-regime convergence", deterministic_regime},
      {5, "theory arithmetic", theory_arithmetic},
      {6, "stopping rule", stopping_rule},
      {7, "desk-scale NN1 experiment", desk_experiment},
      {8, "full-sample stationarity equivalence", full_sample_equivalence},
      {9, "reproducibility", reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
