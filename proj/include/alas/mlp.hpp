#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "alas/dataset.hpp"
#include "alas/problem.hpp"

namespace alas {

/// Fully connected tanh network with a single output, trained with squared error.
///
/// Parameters are laid out layer by layer: the weight matrix W_l (rows = units
/// of layer l, row-major) followed by the bias b_l.
struct MlpSpec {
  std::vector<std::size_t> layers;  ///< input width, hidden widths..., 1

  static constexpr std::size_t kMaxParameters = 2000;

  std::size_t input_width() const { return layers.front(); }
  /// sum over layers of (fan_in + 1) * fan_out.
  std::size_t parameter_count() const;
  /// "22-4-1" style label.
  std::string label() const;
  /// Throws InvalidInput unless there are >= 2 layers, all widths are positive,
  /// the output width is 1 and the parameter count is at most kMaxParameters.
  void validate() const;

  /// Parses "22-4-1".
  static MlpSpec parse(const std::string& label);

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

/// Network output for one input.
double mlp_predict(const MlpSpec& spec, const Vector& params, const Eigen::Ref<const Vector>& input);

/// Seeded normal entries scaled by 1/sqrt(fan_in) for weights and biases alike.
Vector mlp_initial_parameters(const MlpSpec& spec, std::uint64_t seed);

/// f_i(w) = (y_i - yhat_i(w))^2 over a dataset, with the exact gradient from
/// reverse accumulation and the exact Hessian from forward-over-reverse
/// (one dual-number sweep per parameter).
class MlpProblem final : public FiniteSumProblem {
 public:
  /// Throws InvalidInput if the spec is invalid or the dataset width differs
  /// from the input width.
  MlpProblem(MlpSpec spec, std::shared_ptr<const Dataset> data);

  std::size_t dimension() const override { return parameters_; }
  std::size_t size() const override { return data_->size(); }
  void evaluate(std::size_t i, const Vector& w, Order order, ComponentValue& out) const override;

  const MlpSpec& spec() const { return spec_; }
  const Dataset& data() const { return *data_; }

 private:
  MlpSpec spec_;
  std::shared_ptr<const Dataset> data_;
  std::size_t parameters_;
};

}  // namespace alas
