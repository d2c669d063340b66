#include "alas/mlp.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "alas/errors.hpp"

namespace alas {

namespace {

// Value with one tangent direction, for forward-mode over the reverse sweep.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }
inline Dual operator-(double s, Dual a) { return {s - a.v, -a.d}; }
inline Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
inline Dual tanh(Dual a) {
  const double t = std::tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}

// Forward pass; act[l] holds the activations of layer l (act[0] = input).
template <typename T>
T forward(const MlpSpec& spec, const std::vector<T>& w, const double* x, std::vector<std::vector<T>>& act) {
  using std::tanh;
  const std::size_t depth = spec.layers.size() - 1;
  act.resize(depth + 1);
  act[0].resize(spec.layers[0]);
  for (std::size_t i = 0; i < spec.layers[0]; ++i) act[0][i] = T{x[i]};

  std::size_t pos = 0;
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t in = spec.layers[l], out = spec.layers[l + 1];
    act[l + 1].resize(out);
    for (std::size_t o = 0; o < out; ++o) {
      T z = w[pos + out * in + o];
      for (std::size_t i = 0; i < in; ++i) z += w[pos + o * in + i] * act[l][i];
      act[l + 1][o] = tanh(z);
    }
    pos += (in + 1) * out;
  }
  return act[depth][0];
}

// Loss of one sample and, if grad != nullptr, its gradient with respect to w.
// Works for T = double and T = Dual.
template <typename T>
T sample_loss(const MlpSpec& spec, const std::vector<T>& w, const double* x, double y, std::vector<T>* grad) {
  const std::size_t depth = spec.layers.size() - 1;
  std::vector<std::vector<T>> act;
  const T output = forward(spec, w, x, act);
  const T residual = y - output;
  const T loss = residual * residual;
  if (grad == nullptr) return loss;

  std::vector<std::size_t> offset(depth);
  for (std::size_t l = 0, pos = 0; l < depth; ++l) {
    offset[l] = pos;
    pos += (spec.layers[l] + 1) * spec.layers[l + 1];
  }

  grad->assign(w.size(), T{});
  std::vector<T> delta{-2.0 * residual};
  for (std::size_t l = depth; l-- > 0;) {
    const std::size_t in = spec.layers[l], out = spec.layers[l + 1];
    const std::size_t base = offset[l];
    std::vector<T> dz(out);
    for (std::size_t o = 0; o < out; ++o) dz[o] = delta[o] * (1.0 - act[l + 1][o] * act[l + 1][o]);
    std::vector<T> previous(in, T{});
    for (std::size_t o = 0; o < out; ++o) {
      (*grad)[base + out * in + o] = dz[o];
      for (std::size_t i = 0; i < in; ++i) {
        (*grad)[base + o * in + i] = dz[o] * act[l][i];
        previous[i] += w[base + o * in + i] * dz[o];
      }
    }
    delta = std::move(previous);
  }
  return loss;
}

}  // namespace

std::size_t MlpSpec::parameter_count() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) count += (layers[l] + 1) * layers[l + 1];
  return count;
}

std::string MlpSpec::label() const {
  std::ostringstream out;
  for (std::size_t l = 0; l < layers.size(); ++l) out << (l ? "-" : "") << layers[l];
  return out.str();
}

void MlpSpec::validate() const {
  if (layers.size() < 2) throw InvalidInput("mlp: need an input and an output layer");
  for (std::size_t width : layers)
    if (width == 0) throw InvalidInput("mlp: layer widths must be positive");
  if (layers.back() != 1) throw InvalidInput("mlp: output width must be 1");
  if (parameter_count() > kMaxParameters)
    throw InvalidInput("mlp: " + std::to_string(parameter_count()) + " parameters exceed the dense-Hessian cap of " +
                       std::to_string(kMaxParameters));
}

MlpSpec MlpSpec::parse(const std::string& label) {
  MlpSpec spec;
  std::stringstream in(label);
  std::string part;
  while (std::getline(in, part, '-')) {
    try {
      std::size_t used = 0;
      const long long width = std::stoll(part, &used);
      if (used != part.size() || width <= 0) throw InvalidInput("");
      spec.layers.push_back(static_cast<std::size_t>(width));
    } catch (const std::exception&) {
      throw InvalidInput("mlp: malformed architecture '" + label + "'");
    }
  }
  spec.validate();
  return spec;
}

double mlp_predict(const MlpSpec& spec, const Vector& params, const Eigen::Ref<const Vector>& input) {
  if (static_cast<std::size_t>(params.size()) != spec.parameter_count() ||
      static_cast<std::size_t>(input.size()) != spec.input_width())
    throw InvalidInput("mlp_predict: dimension mismatch");
  const std::vector<double> w(params.data(), params.data() + params.size());
  const Vector x = input;
  std::vector<std::vector<double>> act;
  return forward(spec, w, x.data(), act);
}

Vector mlp_initial_parameters(const MlpSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector w(static_cast<Eigen::Index>(spec.parameter_count()));
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l + 1 < spec.layers.size(); ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.layers[l]));
    const auto count = static_cast<Eigen::Index>((spec.layers[l] + 1) * spec.layers[l + 1]);
    for (Eigen::Index k = 0; k < count; ++k) w(pos++) = scale * normal(rng);
  }
  return w;
}

MlpProblem::MlpProblem(MlpSpec spec, std::shared_ptr<const Dataset> data)
    : spec_(std::move(spec)), data_(std::move(data)) {
  spec_.validate();
  if (!data_) throw InvalidInput("mlp: null dataset");
  data_->validate();
  if (data_->dimension() != spec_.input_width())
    throw InvalidInput("mlp: dataset has " + std::to_string(data_->dimension()) + " features but the network expects " +
                       std::to_string(spec_.input_width()));
  parameters_ = spec_.parameter_count();
}

void MlpProblem::evaluate(std::size_t i, const Vector& w, Order order, ComponentValue& out) const {
  if (static_cast<std::size_t>(w.size()) != parameters_) throw InvalidInput("mlp: parameter dimension mismatch");
  if (i >= size()) throw InvalidInput("mlp: component index out of range");

  // Row i of a column-major matrix is strided; copy it out.
  const Vector row = data_->features.row(static_cast<Eigen::Index>(i)).transpose();
  const double y = data_->labels(static_cast<Eigen::Index>(i));
  const auto p = static_cast<Eigen::Index>(parameters_);

  if (order != Order::Hessian) {
    const std::vector<double> wv(w.data(), w.data() + p);
    if (order == Order::Value) {
      out.value = sample_loss<double>(spec_, wv, row.data(), y, nullptr);
      return;
    }
    std::vector<double> grad;
    out.value = sample_loss<double>(spec_, wv, row.data(), y, &grad);
    out.gradient = Eigen::Map<const Vector>(grad.data(), p);
    return;
  }

  std::vector<Dual> wd(static_cast<std::size_t>(p));
  for (Eigen::Index k = 0; k < p; ++k) wd[static_cast<std::size_t>(k)] = {w(k), 0.0};
  out.gradient.resize(p);
  out.hessian.resize(p, p);
  std::vector<Dual> grad;
  for (Eigen::Index j = 0; j < p; ++j) {
    wd[static_cast<std::size_t>(j)].d = 1.0;
    const Dual loss = sample_loss<Dual>(spec_, wd, row.data(), y, &grad);
    wd[static_cast<std::size_t>(j)].d = 0.0;
    if (j == 0) {
      out.value = loss.v;
      for (Eigen::Index k = 0; k < p; ++k) out.gradient(k) = grad[static_cast<std::size_t>(k)].v;
    }
    for (Eigen::Index k = 0; k < p; ++k) out.hessian(k, j) = grad[static_cast<std::size_t>(k)].d;
  }
  // Forward-over-reverse columns agree with the rows only up to rounding.
  out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
}

}  // namespace alas
