#include "kembed/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

#include "kembed/error.hpp"

namespace kembed::linalg {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), Errc::invalid_argument, "eigenvalues: matrix is not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  require(a.allFinite(), Errc::numeric_failure, "eigenvalues: matrix has non-finite entries");

  // dsyevr overwrites its input; Eigen storage is column-major.
  Eigen::MatrixXd work = a;
  Eigen::VectorXd w(n);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  double z_dummy = 0.0;
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'A', 'U', n, work.data(), n, 0.0, 0.0, 0, 0, 0.0,
                     &found, w.data(), &z_dummy, 1, isuppz.data());
  require(info == 0 && found == n, Errc::numeric_failure,
          "eigenvalues: dsyevr failed (info=" + std::to_string(info) + ")");
  return w.reverse();
}

double max_asymmetry(const Eigen::MatrixXd& a) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) worst = std::max(worst, std::fabs(a(i, j) - a(j, i)));
  return worst;
}

}  // namespace kembed::linalg
