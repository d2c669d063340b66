#pragma once

#include <Eigen/Dense>

namespace alas {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace alas
