#include "alas/problem.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <string>

#include "alas/errors.hpp"
#include "alas/linalg.hpp"

namespace alas {

SampleSet::SampleSet(std::vector<std::size_t> indices, std::size_t population)
    : indices_(std::move(indices)), population_(population) {
  if (indices_.empty()) throw InvalidInput("SampleSet: empty sample");
  for (std::size_t i : indices_)
    if (i >= population_) throw InvalidInput("SampleSet: index " + std::to_string(i) + " out of range");
}

SampleSet SampleSet::full(std::size_t population) {
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return SampleSet(std::move(all), population);
}

namespace {

// Components are computed in windows so that a bounded number of Hessians is
// held at once; each window is reduced sequentially in sequence order.
constexpr std::size_t kWindow = 128;

void evaluate_checked(const FiniteSumProblem& problem, std::size_t index, const Vector& x, Order order,
                      ComponentValue& out) {
  problem.evaluate(index, x, order, out);
  bool finite = std::isfinite(out.value);
  if (order >= Order::Gradient) finite = finite && out.gradient.allFinite();
  if (order >= Order::Hessian) finite = finite && out.hessian.allFinite();
  if (!finite) throw NumericFailure("non-finite output from component " + std::to_string(index), index);
}

}  // namespace

SubsampledModel evaluate_model(const FiniteSumProblem& problem, const Vector& x, const SampleSet& sample,
                               Order order, EvalOptions options) {
  const auto n = static_cast<Eigen::Index>(problem.dimension());
  if (x.size() != n) throw InvalidInput("evaluate_model: dimension mismatch");
  if (sample.population() != problem.size()) throw InvalidInput("evaluate_model: sample population mismatch");
  if (!x.allFinite()) throw InvalidInput("evaluate_model: non-finite point");

  SubsampledModel model{.value = 0.0, .gradient = {}, .hessian = {}, .order = order, .sample = sample};
  if (order >= Order::Gradient) model.gradient = Vector::Zero(n);
  if (order >= Order::Hessian) model.hessian = Matrix::Zero(n, n);

  const auto indices = sample.indices();
  const std::size_t threads = std::max(1u, options.threads);
  std::vector<ComponentValue> buffer(std::min(kWindow, indices.size()));

  for (std::size_t start = 0; start < indices.size(); start += kWindow) {
    const std::size_t count = std::min(kWindow, indices.size() - start);

    if (threads == 1) {
      for (std::size_t k = 0; k < count; ++k) evaluate_checked(problem, indices[start + k], x, order, buffer[k]);
    } else {
      // Worker t handles positions t, t + threads, ...; each slot has one writer.
      std::vector<std::future<void>> jobs;
      for (std::size_t t = 1; t < std::min(threads, count); ++t) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
          for (std::size_t k = t; k < count; k += threads)
            evaluate_checked(problem, indices[start + k], x, order, buffer[k]);
        }));
      }
      std::exception_ptr failure;
      try {
        for (std::size_t k = 0; k < count; k += threads)
          evaluate_checked(problem, indices[start + k], x, order, buffer[k]);
      } catch (...) {
        failure = std::current_exception();
      }
      for (auto& job : jobs) {
        try {
          job.get();
        } catch (...) {
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    }

    for (std::size_t k = 0; k < count; ++k) {
      model.value += buffer[k].value;
      if (order >= Order::Gradient) model.gradient += buffer[k].gradient;
      if (order >= Order::Hessian) model.hessian += buffer[k].hessian;
    }
  }

  const double size = static_cast<double>(indices.size());
  model.value /= size;
  if (order >= Order::Gradient) model.gradient /= size;
  if (order >= Order::Hessian) model.hessian /= size;
  return model;
}

SubsampledModel evaluate_full(const FiniteSumProblem& problem, const Vector& x, Order order, EvalOptions options) {
  return evaluate_model(problem, x, SampleSet::full(problem.size()), order, options);
}

AccuracyReport check_accuracy(const FiniteSumProblem& problem, const Vector& x, const Vector& x_next,
                              const SubsampledModel& model, const Vector& next_gradient,
                              const AccuracyThresholds& thresholds, EvalOptions options) {
  const auto n = static_cast<Eigen::Index>(problem.dimension());
  if (x.size() != n || x_next.size() != n || next_gradient.size() != n || model.gradient.size() != n ||
      model.hessian.rows() != n || model.hessian.cols() != n)
    throw InvalidInput("check_accuracy: dimension mismatch");

  const SubsampledModel f = evaluate_full(problem, x, Order::Hessian, options);
  const SubsampledModel f_next = evaluate_full(problem, x_next, Order::Gradient, options);
  const SubsampledModel m_next = evaluate_model(problem, x_next, model.sample, Order::Value, options);

  AccuracyReport report;
  report.thresholds = thresholds;
  report.function_error = std::abs(f.value - model.value);
  report.function_error_next = std::abs(f_next.value - m_next.value);
  report.gradient_error = (f.gradient - model.gradient).norm();
  report.gradient_error_next = (f_next.gradient - next_gradient).norm();
  report.hessian_error = spectral_norm(f.hessian - model.hessian);
  report.accurate = report.function_error <= thresholds.function &&
                    report.function_error_next <= thresholds.function &&
                    report.gradient_error <= thresholds.gradient &&
                    report.gradient_error_next <= thresholds.gradient && report.hessian_error <= thresholds.hessian;
  return report;
}

}  // namespace alas
