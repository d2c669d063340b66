#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "alas/errors.hpp"
#include "alas/line_search.hpp"
#include "alas/problem.hpp"
#include "alas/sampling.hpp"
#include "alas/step.hpp"

namespace alas {

enum class Policy { Theoretical, Practical };

/// Plain always moves to x + alpha d. Step7Prime keeps x when the iteration is
/// model stationary, so repeated samples can certify a stationary point.
enum class Acceptance { Plain, Step7Prime };

enum class Termination {
  JConsecutiveStationary,
  MaxIterations,
  WallClock,
  LineSearchExhaustion,
  Diverged,  ///< only on the partial trace carried by RunAborted
};

std::string_view to_string(Policy policy);
std::string_view to_string(Acceptance acceptance);
std::string_view to_string(Termination reason);
std::string_view to_string(SamplingMode mode);
std::string_view to_string(DecreaseCondition condition);
Policy policy_from_string(std::string_view name);
Acceptance acceptance_from_string(std::string_view name);
Termination termination_from_string(std::string_view name);
SamplingMode sampling_mode_from_string(std::string_view name);
DecreaseCondition decrease_condition_from_string(std::string_view name);

struct SamplingConfig {
  SamplingMode mode = SamplingMode::WithReplacement;
  double fraction = 1.0;
  friend bool operator==(const SamplingConfig&, const SamplingConfig&) = default;
};

struct StoppingRule {
  /// Stop after consecutive_stationary + 1 model-stationary iterations in a row.
  std::size_t consecutive_stationary = 0;
  std::size_t max_iterations = 1000;
  /// Wall-clock budget in seconds; 0 disables it.
  double wall_clock_seconds = 0.0;
  /// Stop instead of taking a zero step when the line search runs out of backtracks.
  bool stop_on_line_search_exhaustion = false;
  friend bool operator==(const StoppingRule&, const StoppingRule&) = default;
};

struct RunConfig {
  Policy policy = Policy::Theoretical;
  double epsilon = 1e-5;
  LineSearchConfig line_search;
  SamplingConfig sampling;
  Acceptance acceptance = Acceptance::Plain;
  StoppingRule stopping;
  std::uint64_t seed = 0;
  /// Evaluate the full objective every this many iterations (0 = never).
  std::size_t full_metrics_every = 0;
  /// Also evaluate the full gradient and Hessian to flag function stationarity.
  bool track_function_stationarity = false;
  /// SGD aborts as divergent once a sampled loss exceeds this or the iterate stops being finite.
  double divergence_threshold = 1e30;
  EvalOptions eval;

  /// Defaults of the analysed method: cubic decrease condition.
  static RunConfig theoretical();
  /// Practical defaults: quadratic decrease, eps = 1e-5, eta = 1e-2, theta = 0.9, 50 backtracks.
  static RunConfig practical();

  /// Throws InvalidInput for eps <= 0, fraction outside (0,1] or a bad line-search config.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct IterationRecord {
  std::size_t k = 0;
  std::uint64_t sample_digest = 0;
  double sample_fraction = 0.0;
  StepKind kind = StepKind::ZeroStep;
  std::optional<double> lambda_min;
  std::optional<double> rayleigh;
  double grad_norm = 0.0;
  std::optional<double> grad_norm_next;  ///< ||g(x_k + alpha_k d_k; S_k)||
  double alpha = 0.0;                    ///< step actually applied (0 for rejected steps)
  std::optional<int> backtracks;         ///< absent when no line search ran
  bool line_search_failed = false;
  double sampled_loss = 0.0;                  ///< m_k(x_k)
  std::optional<double> sampled_loss_next;    ///< m_k(x_{k+1})
  std::optional<double> full_loss;            ///< f(x_k) when the cadence fires
  bool model_stationary = false;
  std::optional<bool> function_stationary;
  double elapsed_seconds = 0.0;  ///< 0 unless a wall-clock budget is set

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunTrace {
  std::string algorithm;  ///< e.g. "alas-practical" or "sgd"
  std::string problem;    ///< free-form label, e.g. the architecture "2-1-1"
  RunConfig config;
  std::optional<double> learning_rate;  ///< SGD only
  std::vector<IterationRecord> records;
  Termination termination = Termination::MaxIterations;
  Vector final_point;
  std::optional<double> final_full_loss;

  friend bool operator==(const RunTrace& a, const RunTrace& b);
};

/// A run stopped by a numeric failure; carries everything recorded so far.
class RunAborted : public NumericFailure {
 public:
  RunAborted(const std::string& what, RunTrace partial)
      : NumericFailure(what), partial_(std::move(partial)) {}
  const RunTrace& partial() const { return partial_; }

 private:
  RunTrace partial_;
};

/// min{||g_k||, ||g_k+||} <= eps_g and lambda_k >= -eps_H.
bool model_stationarity_check(double grad_norm, double grad_norm_next, double lambda_min, double eps_g,
                              double eps_H);

/// min{||grad f(x_k)||, ||grad f(x_next)||} <= eps_g and lambda_min(hess f(x_k)) >= -eps_H.
bool function_stationarity_check(const FiniteSumProblem& problem, const Vector& x_k, const Vector& x_next,
                                 double eps_g, double eps_H, EvalOptions options = {});

/// Seeded FNV-1a digest of a sample's index sequence.
std::uint64_t sample_digest(const SampleSet& sample, std::uint64_t seed);

/// Mutable state of the outer loop.
struct AlasState {
  Vector x;
  std::size_t k = 0;
  std::size_t consecutive_stationary = 0;
};

/// One iteration for a given sample: model, step, line search, acceptance.
///
/// Returns the record and updates `state` (x, k and the consecutive-stationarity
/// counter). Line-search exhaustion leaves x unchanged.
IterationRecord alas_step(AlasState& state, const FiniteSumProblem& problem, const SampleSet& sample,
                          const RunConfig& config);

/// Runs the method from x0 until the stopping rule fires.
/// Numeric failures are rethrown as RunAborted with the partial trace.
RunTrace run(const FiniteSumProblem& problem, const Vector& x0, const RunConfig& config);

/// Mini-batch SGD with a constant learning rate using the same sampling,
/// budgets and metrics. Stationarity-based stopping is not applied.
RunTrace sgd_run(const FiniteSumProblem& problem, const Vector& x0, double learning_rate, const RunConfig& config);

}  // namespace alas
