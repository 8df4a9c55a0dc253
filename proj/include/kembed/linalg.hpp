#pragma once

#include <Eigen/Dense>

namespace kembed::linalg {

inline constexpr const char* kEigensolverName = "LAPACK dsyevr";

/// All eigenvalues of a symmetric matrix, descending (LAPACK dsyevr, upper
/// triangle). Throws numeric_failure if the solver does not converge.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// max_ij |a_ij - a_ji|
double max_asymmetry(const Eigen::MatrixXd& a);

}  // namespace kembed::linalg
