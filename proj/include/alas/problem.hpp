#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "alas/types.hpp"

namespace alas {

/// How many derivatives an evaluation needs.
enum class Order { Value = 0, Gradient = 1, Hessian = 2 };

/// Output of one component oracle call. Fields beyond the requested order are
/// left untouched.
struct ComponentValue {
  double value = 0.0;
  Vector gradient;
  Matrix hessian;
};

/// Objective of the form f(x) = (1/N) sum_i f_i(x).
///
/// Implementations must be deterministic and safe to call concurrently from
/// several threads with distinct output objects.
class FiniteSumProblem {
 public:
  virtual ~FiniteSumProblem() = default;

  /// Dimension n of the variable x.
  virtual std::size_t dimension() const = 0;
  /// Number of components N.
  virtual std::size_t size() const = 0;

  /// Evaluates component i at x. `out.gradient` and `out.hessian` are resized by
  /// the implementation as needed.
  virtual void evaluate(std::size_t i, const Vector& x, Order order, ComponentValue& out) const = 0;
};

/// Ordered multiset of component indices (0-based).
class SampleSet {
 public:
  /// Throws InvalidInput if `indices` is empty or any index is >= population.
  SampleSet(std::vector<std::size_t> indices, std::size_t population);

  /// Every index 0..population-1 once, ascending.
  static SampleSet full(std::size_t population);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t population() const { return population_; }
  /// |S| / N.
  double fraction() const { return static_cast<double>(indices_.size()) / static_cast<double>(population_); }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t population_;
};

/// Sample averages m(x;S), g(x;S), H(x;S).
struct SubsampledModel {
  double value = 0.0;
  Vector gradient;  ///< empty when evaluated at Order::Value
  Matrix hessian;   ///< empty below Order::Hessian
  Order order = Order::Hessian;
  SampleSet sample;
};

/// Controls concurrent component evaluation. Results do not depend on `threads`.
struct EvalOptions {
  unsigned threads = 1;
  friend bool operator==(const EvalOptions&, const EvalOptions&) = default;
};

/// Averages the components in S at x, summing in ascending sequence position
/// (repeats counted with multiplicity) and dividing by |S| once.
///
/// Throws InvalidInput on a dimension mismatch or a sample drawn from a
/// different population, and NumericFailure naming the first offending index
/// if a component returns a non-finite value.
SubsampledModel evaluate_model(const FiniteSumProblem& problem, const Vector& x, const SampleSet& sample,
                               Order order = Order::Hessian, EvalOptions options = {});

/// The full objective, i.e. evaluate_model over SampleSet::full.
SubsampledModel evaluate_full(const FiniteSumProblem& problem, const Vector& x, Order order = Order::Hessian,
                              EvalOptions options = {});

/// Accuracy thresholds (delta_f, delta_g, delta_H).
struct AccuracyThresholds {
  double function = 0.0;
  double gradient = 0.0;
  double hessian = 0.0;
};

/// Observed model errors at x and x_next compared against the thresholds.
struct AccuracyReport {
  double function_error = 0.0;            ///< |f(x) - m(x;S)|
  double function_error_next = 0.0;       ///< |f(x_next) - m(x_next;S)|
  double gradient_error = 0.0;            ///< ||grad f(x) - g(x;S)||
  double gradient_error_next = 0.0;       ///< ||grad f(x_next) - g(x_next;S)||
  double hessian_error = 0.0;             ///< spectral norm of hess f(x) - H(x;S)
  AccuracyThresholds thresholds;
  bool accurate = false;
};

/// Checks the five accuracy inequalities for a model built at x from `model.sample`.
///
/// `next_gradient` must be g(x_next; S). The full objective is evaluated at both
/// points, so this is meant for desk-scale problems and tests.
AccuracyReport check_accuracy(const FiniteSumProblem& problem, const Vector& x, const Vector& x_next,
                              const SubsampledModel& model, const Vector& next_gradient,
                              const AccuracyThresholds& thresholds, EvalOptions options = {});

}  // namespace alas
