#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's numerics: matrices are plain nested vectors and scalar formulas
// are evaluated in long double.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long double>>;
using Vec = std::vector<long double>;

/// Number of eigenvalues of a symmetric matrix strictly below sigma, counted
/// from the signs of the LDL^T pivots of A - sigma I (Sylvester's law of inertia).
inline int count_below(const Mat& a, long double sigma) {
  const std::size_t n = a.size();
  Mat m = a;
  for (std::size_t i = 0; i < n; ++i) m[i][i] -= sigma;
  int negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    long double pivot = m[k][k];
    if (pivot == 0.0L) pivot = -1e-30L;  // perturb to break exact ties
    if (pivot < 0.0L) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double factor = m[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return negatives;
}

/// Smallest eigenvalue by bisection on the inertia count.
inline long double min_eigenvalue(const Mat& a) {
  const std::size_t n = a.size();
  long double radius = 0.0L;  // Gershgorin bound
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(a[i][j]);
    radius = std::max(radius, row);
  }
  long double lo = -radius - 1.0L, hi = radius + 1.0L;
  for (int it = 0; it < 200 && hi - lo > 1e-18L * std::max(1.0L, radius); ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (count_below(a, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5L * (lo + hi);
}

/// Solves M x = b by Gaussian elimination with partial pivoting.
inline Vec solve(Mat m, Vec b) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[p][k])) p = i;
    std::swap(m[k], m[p]);
    std::swap(b[k], b[p]);
    if (m[k][k] == 0.0L) m[k][k] = 1e-30L;
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

/// Unit eigenvector for eigenvalue lambda by inverse iteration, with the first
/// component above `tol` made positive.
inline Vec eigenvector(const Mat& a, long double lambda, long double tol = 1e-8L) {
  const std::size_t n = a.size();
  Mat shifted = a;
  for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= lambda + 1e-12L;
  Vec v(n, 1.0L);
  for (std::size_t i = 0; i < n; ++i) v[i] += 0.01L * static_cast<long double>(i);
  for (int it = 0; it < 8; ++it) {
    v = solve(shifted, v);
    long double norm = 0.0L;
    for (auto e : v) norm += e * e;
    norm = std::sqrt(norm);
    for (auto& e : v) e /= norm;
  }
  for (auto e : v) {
    if (std::fabs(e) > tol) {
      if (e < 0.0L)
        for (auto& f : v) f = -f;
      break;
    }
  }
  return v;
}

/// Sequential mean in the given order.
inline long double mean(const std::vector<long double>& values) {
  long double s = 0.0L;
  for (auto v : values) s += v;
  return s / static_cast<long double>(values.size());
}

// Scalar theory formulas, written out directly.

inline long double log_theta_plus(long double theta, long double arg) {
  return std::max(0.0L, std::log(arg) / std::log(theta));
}

inline long double c_rn(long double theta, long double eta, long double lh) {
  return std::min(1.0L / (1.0L + std::sqrt(1.0L + lh / 2.0L)), 6.0L * theta / (lh + eta));
}

inline long double c_all(long double theta, long double eta, long double lh) {
  const long double nc = 3.0L * theta / (lh + eta);
  const long double n = std::min(std::sqrt(2.0L / lh), nc);
  return std::min({nc, n, c_rn(theta, eta, lh)});
}

inline long double rho(long double t, long double q, long double ul, long double eta) {
  const long double num = (1.0L - q) * ul;
  const long double den = num + q * eta * t * t * t / 24.0L;
  return den == 0.0L ? 0.0L : num / den;
}

inline long double hessian_fraction(long double N, long double L, long double delta, long double p) {
  return 16.0L * L * L / delta * std::log(2.0L * N / (1.0L - p)) / N;
}

inline long double function_fraction(long double N, long double fup, long double delta, long double p) {
  return 16.0L * fup * fup / delta * std::log(2.0L / (1.0L - p)) / N;
}

inline long double gradient_fraction(long double N, long double ug, long double delta, long double p) {
  const long double r = 1.0L + std::sqrt(8.0L * std::log(1.0L / (1.0L - p)));
  return ug * ug / (delta * delta) * r * r / N;
}

inline long double full_iteration_bound(long double gap, long double eta, long double c, long double eps) {
  const long double c_hat = eta * c * c * c / 24.0L;
  return gap / c_hat * std::pow(eps, -1.5L) + 1.0L;
}

}  // namespace oracle
