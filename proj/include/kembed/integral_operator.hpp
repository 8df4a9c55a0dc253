#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kembed/kernel.hpp"
#include "kembed/measure.hpp"

namespace kembed {

/// The data of the identical embedding H(k) -> L2(mu): a kernel and a
/// discrete measure whose atoms lie in the kernel's domain.
class EmbeddingModel {
 public:
  EmbeddingModel(Kernel kernel, DiscreteMeasure measure);

  const Kernel& kernel() const { return kernel_; }
  const DiscreteMeasure& measure() const { return measure_; }
  std::size_t size() const { return measure_.size(); }

 private:
  Kernel kernel_;
  DiscreteMeasure measure_;
};

struct SpectralReport {
  std::vector<double> singular_values;  // descending, clamped at 0
  std::vector<double> raw_eigenvalues;  // all eigenvalues of the L2 matrix, descending, unclamped
  double operator_norm = 0.0;
  double hs_trace = 0.0;
  double kernel_l2_sq = 0.0;
  std::size_t atoms_count = 0;
  /// Set on sequence-space models: the sums above are partial sums up to N.
  std::optional<std::size_t> truncated_at;
};

/// A_ij = sqrt(w_i) k(t_i,t_j) sqrt(w_j): the matrix of S S* in the weighted
/// coordinates g_i -> sqrt(w_i) g(t_i).
Eigen::MatrixXd l2_matrix(const EmbeddingModel& m);

/// Top-n singular values of S from the eigenvalues of l2_matrix. Negative
/// eigenvalues down to -1e-8 ||A|| are clamped; anything lower is a
/// numeric_failure.
SpectralReport spectrum(const EmbeddingModel& m, std::size_t n);

/// sum_i w_i k(t_i, t_i)
double hs_trace(const EmbeddingModel& m);

/// sum_ij w_i w_j k(t_i, t_j)^2
double kernel_l2_norm_sq(const EmbeddingModel& m);

/// (T f)(s) = sum_t w_t k(s,t) f(t), sampled at the atoms.
std::vector<double> apply_T(const EmbeddingModel& m, std::span<const double> f);

/// sum_s w_s (sum_t w_t k(s,t) f(t))^2
double t3_functional(const EmbeddingModel& m, std::span<const double> f);

}  // namespace kembed
