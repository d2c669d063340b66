#include "alas/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "alas/errors.hpp"

namespace alas {

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = j + 1; i < a.rows(); ++i)
      if (!(std::abs(a(i, j) - a(j, i)) <= tol)) return false;
  return true;
}

EigenPair min_eigenpair(const Matrix& h, double tol) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw InvalidInput("min_eigenpair: matrix must be square and non-empty");
  if (!is_symmetric(h)) throw InvalidInput("min_eigenpair: matrix is not symmetric");
  if (!h.allFinite()) throw NumericFailure("min_eigenpair: non-finite matrix entry");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericFailure("min_eigenpair: eigendecomposition did not converge");

  EigenPair out;
  out.value = solver.eigenvalues()(0);
  out.vector = solver.eigenvectors().col(0);
  out.vector.normalize();

  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < out.vector.size(); ++i) {
    if (std::abs(out.vector(i)) > tol * scale) {
      if (out.vector(i) < 0.0) out.vector = -out.vector;
      break;
    }
  }

  const double residual = (h * out.vector - out.value * out.vector).norm();
  if (!(residual <= tol * scale)) throw NumericFailure("min_eigenpair: eigenpair residual above tolerance");
  return out;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericFailure("spectral_norm: eigendecomposition did not converge");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Vector spd_solve(const Matrix& a, const Vector& b) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NumericFailure("spd_solve: matrix is not positive definite");
  Vector x = llt.solve(b);
  if (!x.allFinite()) throw NumericFailure("spd_solve: non-finite solution");
  return x;
}

}  // namespace alas
