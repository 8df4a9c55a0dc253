#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "kembed/expr.hpp"

namespace kembed {

/// Where points live: a closed real interval, or the positive integers
/// (points are then stored as exact integer-valued doubles).
struct Domain {
  enum class Kind { interval, naturals };

  Kind kind = Kind::interval;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Domain interval(double a, double b) { return {Kind::interval, a, b}; }
  static Domain real_line() { return {}; }
  static Domain naturals() { return {Kind::naturals, 1.0, std::numeric_limits<double>::infinity()}; }

  bool contains(double p) const;
  /// True if every point of `inner` is a point of this domain.
  bool covers(const Domain& inner) const;
  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

inline constexpr double kProbabilityTolerance = 1e-12;

/// Finite atomic measure: the computational stand-in for mu. Immutable.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights, Domain domain);

  std::size_t size() const { return atoms_.size(); }
  std::span<const double> atoms() const { return atoms_; }
  std::span<const double> weights() const { return weights_; }
  const Domain& domain() const { return domain_; }
  double total_mass() const { return total_mass_; }
  bool is_probability() const;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  Domain domain_;
  double total_mass_ = 0.0;
};

/// Composite midpoint rule on [a, b] with m cells.
DiscreteMeasure uniform_grid_measure(double a, double b, std::size_t m);

DiscreteMeasure atomic_measure(std::vector<double> atoms, std::vector<double> weights,
                               Domain domain);

/// Atoms 1..n on the naturals with weights w(i).
DiscreteMeasure sequence_measure(const Sequence& weights, std::size_t n);

/// mu^d on d-tuples, stored row-major.
class TensorMeasure {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> atom(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  std::span<const double> weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  bool is_probability() const;

 private:
  friend TensorMeasure tensor_power(const DiscreteMeasure&, std::size_t, std::size_t);
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

inline constexpr std::size_t kDefaultTensorCap = 1'000'000;

TensorMeasure tensor_power(const DiscreteMeasure& m, std::size_t d,
                           std::size_t cap = kDefaultTensorCap);

/// Neumaier-compensated sum; fixed left-to-right order.
double compensated_sum(std::span<const double> values);

}  // namespace kembed
