#pragma once

#include <Eigen/Dense>

namespace cars {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace cars
