#pragma once

#include "alas/types.hpp"

namespace alas {

/// Smallest eigenvalue of a symmetric matrix and a unit eigenvector for it.
struct EigenPair {
  double value = 0.0;
  Vector vector;
};

/// Entrywise symmetry check: |A(i,j) - A(j,i)| <= tol for all i, j.
bool is_symmetric(const Matrix& a, double tol = 1e-12);

/// Minimum eigenpair via a dense symmetric eigendecomposition.
///
/// The returned vector has unit norm and its first component with magnitude
/// above tol * max(1, ||H||) is positive. Throws InvalidInput for non-square
/// or non-symmetric input (beyond 1e-12 entrywise) and NumericFailure when the
/// decomposition does not converge or the residual exceeds tol * max(1, ||H||).
EigenPair min_eigenpair(const Matrix& h, double tol = 1e-10);

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
double spectral_norm(const Matrix& a);

/// Solves A x = b for symmetric positive definite A by Cholesky factorization.
/// Throws NumericFailure if the factorization fails.
Vector spd_solve(const Matrix& a, const Vector& b);

}  // namespace alas
