#include "alas/driver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <string>

namespace alas {

namespace {

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [e, name] : table)
    if (e == value) return name;
  return "unknown";
}

template <typename Enum, std::size_t N>
Enum parse_name(const std::array<std::pair<Enum, std::string_view>, N>& table, std::string_view name,
                const char* what) {
  for (const auto& [e, n] : table)
    if (n == name) return e;
  throw InvalidInput(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

constexpr std::array<std::pair<Policy, std::string_view>, 2> kPolicies{{
    {Policy::Theoretical, "theoretical"},
    {Policy::Practical, "practical"},
}};
constexpr std::array<std::pair<Acceptance, std::string_view>, 2> kAcceptance{{
    {Acceptance::Plain, "plain"},
    {Acceptance::Step7Prime, "step7prime"},
}};
constexpr std::array<std::pair<Termination, std::string_view>, 5> kTermination{{
    {Termination::JConsecutiveStationary, "j_consecutive_stationary"},
    {Termination::MaxIterations, "max_iterations"},
    {Termination::WallClock, "wall_clock"},
    {Termination::LineSearchExhaustion, "line_search_exhaustion"},
    {Termination::Diverged, "diverged"},
}};
constexpr std::array<std::pair<SamplingMode, std::string_view>, 2> kSampling{{
    {SamplingMode::WithReplacement, "with_replacement"},
    {SamplingMode::EpochPartition, "epoch_partition"},
}};
constexpr std::array<std::pair<DecreaseCondition, std::string_view>, 2> kConditions{{
    {DecreaseCondition::Cubic, "cubic"},
    {DecreaseCondition::Quadratic, "quadratic"},
}};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool vectors_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.size() == 0 || (a.array() == b.array()).all());
}

}  // namespace

std::string_view to_string(Policy policy) { return name_of(kPolicies, policy); }
std::string_view to_string(Acceptance acceptance) { return name_of(kAcceptance, acceptance); }
std::string_view to_string(Termination reason) { return name_of(kTermination, reason); }
std::string_view to_string(SamplingMode mode) { return name_of(kSampling, mode); }
std::string_view to_string(DecreaseCondition condition) { return name_of(kConditions, condition); }
Policy policy_from_string(std::string_view name) { return parse_name(kPolicies, name, "policy"); }
Acceptance acceptance_from_string(std::string_view name) { return parse_name(kAcceptance, name, "acceptance"); }
Termination termination_from_string(std::string_view name) { return parse_name(kTermination, name, "termination"); }
SamplingMode sampling_mode_from_string(std::string_view name) { return parse_name(kSampling, name, "sampling mode"); }
DecreaseCondition decrease_condition_from_string(std::string_view name) {
  return parse_name(kConditions, name, "decrease condition");
}

RunConfig RunConfig::theoretical() {
  RunConfig config;
  config.policy = Policy::Theoretical;
  config.line_search.condition = DecreaseCondition::Cubic;
  return config;
}

RunConfig RunConfig::practical() {
  RunConfig config;
  config.policy = Policy::Practical;
  config.line_search.condition = DecreaseCondition::Quadratic;
  return config;
}

void RunConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidInput("run config: epsilon must be positive");
  if (!(sampling.fraction > 0.0 && sampling.fraction <= 1.0))
    throw InvalidInput("run config: sampling fraction must lie in (0,1]");
  if (stopping.wall_clock_seconds < 0.0) throw InvalidInput("run config: negative wall-clock budget");
  line_search.validate();
}

bool operator==(const RunTrace& a, const RunTrace& b) {
  return a.algorithm == b.algorithm && a.problem == b.problem && a.config == b.config && a.learning_rate == b.learning_rate &&
         a.records == b.records && a.termination == b.termination && vectors_equal(a.final_point, b.final_point) &&
         a.final_full_loss == b.final_full_loss;
}

bool model_stationarity_check(double grad_norm, double grad_norm_next, double lambda_min, double eps_g,
                              double eps_H) {
  return std::min(grad_norm, grad_norm_next) <= eps_g && lambda_min >= -eps_H;
}

bool function_stationarity_check(const FiniteSumProblem& problem, const Vector& x_k, const Vector& x_next,
                                 double eps_g, double eps_H, EvalOptions options) {
  const SubsampledModel at_k = evaluate_full(problem, x_k, Order::Hessian, options);
  const double next_norm = vectors_equal(x_k, x_next)
                               ? at_k.gradient.norm()
                               : evaluate_full(problem, x_next, Order::Gradient, options).gradient.norm();
  const double lambda = min_eigenpair(at_k.hessian).value;
  return std::min(at_k.gradient.norm(), next_norm) <= eps_g && lambda >= -eps_H;
}

std::uint64_t sample_digest(const SampleSet& sample, std::uint64_t seed) {
  constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t hash = 0xcbf29ce484222325ULL ^ seed;
  for (std::size_t index : sample.indices()) {
    auto v = static_cast<std::uint64_t>(index);
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (v >> (8 * byte)) & 0xffU;
      hash *= kPrime;
    }
  }
  return hash;
}

IterationRecord alas_step(AlasState& state, const FiniteSumProblem& problem, const SampleSet& sample,
                          const RunConfig& config) {
  const double eps = config.epsilon;
  const double eps_h = std::sqrt(eps);
  const SubsampledModel model = evaluate_model(problem, state.x, sample, Order::Hessian, config.eval);

  IterationRecord rec;
  rec.k = state.k;
  rec.sample_digest = sample_digest(sample, config.seed);
  rec.sample_fraction = sample.fraction();
  rec.sampled_loss = model.value;
  rec.grad_norm = model.gradient.norm();
  if (config.full_metrics_every > 0 && state.k % config.full_metrics_every == 0)
    rec.full_loss = evaluate_full(problem, state.x, Order::Value, config.eval).value;

  StepDecision decision = config.policy == Policy::Theoretical
                              ? select_step_theoretical(model.gradient, model.hessian, eps)
                              : select_step_practical(model.gradient, model.hessian, eps);
  rec.kind = decision.kind;
  rec.rayleigh = decision.rayleigh;
  rec.lambda_min = decision.lambda_min;

  // Trial point x_k + alpha_k d_k and the model quantities there.
  Vector trial = state.x;
  double trial_value = model.value;
  double next_grad_norm = rec.grad_norm;

  if (decision.kind != StepKind::ZeroStep) {
    auto model_value = [&](const Vector& y) {
      return evaluate_model(problem, y, sample, Order::Value, config.eval).value;
    };
    const LineSearchResult ls = backtrack(model_value, state.x, model.value, decision.direction, config.line_search);
    rec.backtracks = ls.backtracks;
    if (ls.satisfied) {
      rec.alpha = ls.alpha;
      trial = state.x + ls.alpha * decision.direction;
      trial_value = ls.trial_value;
      next_grad_norm = evaluate_model(problem, trial, sample, Order::Gradient, config.eval).gradient.norm();
    } else {
      rec.line_search_failed = true;
    }
  }
  rec.grad_norm_next = next_grad_norm;

  // The practical policy may skip the eigenvalue; stationarity needs it only
  // when the gradient test passes.
  if (!rec.lambda_min && std::min(rec.grad_norm, next_grad_norm) <= eps)
    rec.lambda_min = min_eigenpair(model.hessian).value;
  rec.model_stationary =
      rec.lambda_min.has_value() && model_stationarity_check(rec.grad_norm, next_grad_norm, *rec.lambda_min, eps, eps_h);

  if (config.track_function_stationarity)
    rec.function_stationary = function_stationarity_check(problem, state.x, trial, eps, eps_h, config.eval);

  const bool hold = config.acceptance == Acceptance::Step7Prime && rec.model_stationary;
  if (hold) {
    rec.alpha = 0.0;
    rec.sampled_loss_next = model.value;
  } else {
    state.x = std::move(trial);
    rec.sampled_loss_next = trial_value;
  }

  state.consecutive_stationary = rec.model_stationary ? state.consecutive_stationary + 1 : 0;
  ++state.k;
  return rec;
}

RunTrace run(const FiniteSumProblem& problem, const Vector& x0, const RunConfig& config) {
  config.validate();
  if (x0.size() != static_cast<Eigen::Index>(problem.dimension())) throw InvalidInput("run: x0 dimension mismatch");

  RunTrace trace;
  trace.algorithm = config.policy == Policy::Theoretical ? "alas-theoretical" : "alas-practical";
  trace.config = config;

  Sampler sampler(config.sampling.mode, problem.size(), config.sampling.fraction, config.seed);
  AlasState state{.x = x0};
  const auto start = Clock::now();
  const bool timed = config.stopping.wall_clock_seconds > 0.0;

  try {
    while (true) {
      if (trace.records.size() >= config.stopping.max_iterations) {
        trace.termination = Termination::MaxIterations;
        break;
      }
      if (timed && seconds_since(start) >= config.stopping.wall_clock_seconds) {
        trace.termination = Termination::WallClock;
        break;
      }
      IterationRecord rec = alas_step(state, problem, sampler.next(), config);
      if (timed) rec.elapsed_seconds = seconds_since(start);
      const bool exhausted = rec.line_search_failed;
      trace.records.push_back(std::move(rec));

      if (exhausted && config.stopping.stop_on_line_search_exhaustion) {
        trace.termination = Termination::LineSearchExhaustion;
        break;
      }
      if (state.consecutive_stationary >= config.stopping.consecutive_stationary + 1) {
        trace.termination = Termination::JConsecutiveStationary;
        break;
      }
    }
    trace.final_point = state.x;
    if (config.full_metrics_every > 0)
      trace.final_full_loss = evaluate_full(problem, state.x, Order::Value, config.eval).value;
  } catch (const NumericFailure& failure) {
    trace.final_point = state.x;
    trace.termination = Termination::Diverged;
    throw RunAborted(failure.what(), std::move(trace));
  }
  return trace;
}

RunTrace sgd_run(const FiniteSumProblem& problem, const Vector& x0, double learning_rate, const RunConfig& config) {
  if (!(learning_rate > 0.0)) throw InvalidInput("sgd_run: learning rate must be positive");
  config.validate();
  if (x0.size() != static_cast<Eigen::Index>(problem.dimension()))
    throw InvalidInput("sgd_run: x0 dimension mismatch");

  RunTrace trace;
  trace.algorithm = "sgd";
  trace.config = config;
  trace.learning_rate = learning_rate;

  Sampler sampler(config.sampling.mode, problem.size(), config.sampling.fraction, config.seed);
  Vector x = x0;
  const auto start = Clock::now();
  const bool timed = config.stopping.wall_clock_seconds > 0.0;

  try {
    for (std::size_t k = 0;; ++k) {
      if (k >= config.stopping.max_iterations) {
        trace.termination = Termination::MaxIterations;
        break;
      }
      if (timed && seconds_since(start) >= config.stopping.wall_clock_seconds) {
        trace.termination = Termination::WallClock;
        break;
      }
      const SampleSet sample = sampler.next();
      const SubsampledModel model = evaluate_model(problem, x, sample, Order::Gradient, config.eval);

      IterationRecord rec;
      rec.k = k;
      rec.sample_digest = sample_digest(sample, config.seed);
      rec.sample_fraction = sample.fraction();
      rec.kind = StepKind::ScaledGradient;
      rec.alpha = learning_rate;
      rec.sampled_loss = model.value;
      rec.grad_norm = model.gradient.norm();
      if (config.full_metrics_every > 0 && k % config.full_metrics_every == 0)
        rec.full_loss = evaluate_full(problem, x, Order::Value, config.eval).value;

      x -= learning_rate * model.gradient;
      if (timed) rec.elapsed_seconds = seconds_since(start);
      trace.records.push_back(rec);

      if (!x.allFinite() || !(model.value <= config.divergence_threshold)) {
        trace.final_point = x;
        trace.termination = Termination::Diverged;
        throw RunAborted("sgd_run: divergence at iteration " + std::to_string(k), std::move(trace));
      }
    }
    trace.final_point = x;
    if (config.full_metrics_every > 0)
      trace.final_full_loss = evaluate_full(problem, x, Order::Value, config.eval).value;
  } catch (const RunAborted&) {
    throw;
  } catch (const NumericFailure& failure) {
    trace.final_point = x;
    trace.termination = Termination::Diverged;
    throw RunAborted(failure.what(), std::move(trace));
  }
  return trace;
}

}  // namespace alas
