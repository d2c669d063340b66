#pragma once

#include <random>

#include "alas/test_functions.hpp"
#include "alas/types.hpp"
#include "oracles.hpp"

namespace testing_helpers {

inline oracle::Mat to_oracle(const alas::Matrix& a) {
  oracle::Mat m(a.rows(), oracle::Vec(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

inline alas::Matrix random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  alas::Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = normal(rng);
  return a;
}

inline alas::Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  alas::Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// Components x^2 and (x-2)^2 in one variable.
inline alas::CallbackProblem two_wells() {
  auto make = [](double shift) {
    return [shift](const alas::Vector& x, alas::Order order, alas::ComponentValue& out) {
      const double r = x(0) - shift;
      out.value = r * r;
      if (order >= alas::Order::Gradient) out.gradient = alas::Vector::Constant(1, 2.0 * r);
      if (order >= alas::Order::Hessian) out.hessian = alas::Matrix::Constant(1, 1, 2.0);
    };
  };
  return alas::CallbackProblem(1, {make(0.0), make(2.0)});
}

/// Sum of random quadratic components with mixed curvature plus a quartic term,
/// so that the landscape is nonconvex but bounded below.
inline alas::CallbackProblem nonconvex_sum(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<alas::CallbackProblem::Component> comps;
  for (std::size_t i = 0; i < count; ++i) {
    const alas::Matrix a = random_symmetric(rng, 3);
    const alas::Vector b = random_vector(rng, 3, 0.3);
    comps.push_back([a, b](const alas::Vector& x, alas::Order order, alas::ComponentValue& out) {
      const double q = x.squaredNorm();
      out.value = 0.5 * x.dot(a * x) + b.dot(x) + 0.25 * q * q;
      if (order >= alas::Order::Gradient) out.gradient = a * x + b + q * x;
      if (order >= alas::Order::Hessian) out.hessian = a + q * alas::Matrix::Identity(3, 3) + 2.0 * x * x.transpose();
    });
  }
  return alas::CallbackProblem(3, std::move(comps));
}

}  // namespace testing_helpers
