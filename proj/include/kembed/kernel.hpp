#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kembed/expr.hpp"
#include "kembed/measure.hpp"

namespace kembed {

using Params = std::map<std::string, double, std::less<>>;

/// Symmetric positive-semidefinite kernel with a closed-form evaluator.
/// Immutable; evaluation is pure.
class Kernel {
 public:
  using Evaluator = std::function<double(double, double)>;

  Kernel(std::string name, Domain domain, Evaluator eval, Params params = {},
         std::optional<double> diagonal_sup = std::nullopt, bool constant_plus = false);

  double operator()(double s, double t) const { return eval_(s, t); }

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  const Params& params() const { return params_; }
  /// sup_t k(t,t) over the domain when known in closed form.
  std::optional<double> diagonal_sup() const { return diagonal_sup_; }
  bool is_constant_plus() const { return constant_plus_; }

 private:
  std::string name_;
  Domain domain_;
  Evaluator eval_;
  Params params_;
  std::optional<double> diagonal_sup_;
  bool constant_plus_ = false;
};

/// Brownian-motion kernel min(s,t) on [0,1]. Its RKHS contains no nonzero
/// constant, which is what the infinite-variate construction assumes.
Kernel min_kernel();
Kernel gaussian_kernel(double sigma);
/// delta_ij / nu_i on the naturals.
Kernel diagonal_sequence_kernel(Sequence nu);
/// 1 + k(s,t). Rejected by the infinite-variate model.
Kernel constant_plus_kernel(const Kernel& inner);
Kernel zero_kernel(Domain domain = Domain::real_line());

/// Catalog lookup: min, gaussian {sigma}, diagonal_sequence (needs `nu`),
/// constant_plus (needs `inner`), zero.
Kernel make_kernel(std::string_view name, const Params& params,
                   const std::optional<Sequence>& nu = std::nullopt,
                   const Kernel* inner = nullptr);

/// G_ij = k(p_i, p_j), one evaluation per unordered pair.
Eigen::MatrixXd gram(const Kernel& k, std::span<const double> points);

/// Smallest eigenvalue of a symmetric matrix.
double psd_min_eig(const Eigen::MatrixXd& g);

/// min eigenvalue >= -1e-8 * ||G||_2.
bool passes_psd(const Eigen::MatrixXd& g);

inline constexpr double kPsdRelativeTolerance = 1e-8;

/// Finite subset of the positive integers, strictly increasing.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<std::uint32_t> elements);
  Subset(std::initializer_list<std::uint32_t> elements)
      : Subset(std::vector<std::uint32_t>(elements)) {}

  std::span<const std::uint32_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::uint32_t max() const { return elements_.empty() ? 0 : elements_.back(); }
  bool contains(std::uint32_t j) const;
  bool disjoint(const Subset& other) const;
  Subset united(const Subset& other) const;
  std::string to_string() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset& a, const Subset& b) { return a.elements_ <=> b.elements_; }

 private:
  std::vector<std::uint32_t> elements_;
};

/// prod_{j in u} k(x_j, y_j) with 1-based coordinates; 1 for the empty set.
double ku_eval(const Kernel& k, const Subset& u, std::span<const double> x,
               std::span<const double> y);

}  // namespace kembed
