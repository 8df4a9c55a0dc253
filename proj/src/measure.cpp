#include "kembed/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kembed/error.hpp"

namespace kembed {

bool Domain::contains(double p) const {
  if (!std::isfinite(p) && kind == Kind::naturals) return false;
  if (p < lo || p > hi) return false;
  if (kind == Kind::naturals) return p >= 1.0 && std::floor(p) == p;
  return !std::isnan(p);
}

bool Domain::covers(const Domain& inner) const {
  if (kind == Kind::naturals) return inner.kind == Kind::naturals;
  return inner.kind == Kind::interval && inner.lo >= lo && inner.hi <= hi;
}

std::string Domain::describe() const {
  if (kind == Kind::naturals) return "naturals";
  std::ostringstream os;
  os << "interval(" << lo << ", " << hi << ")";
  return os.str();
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) carry += (sum - t) + v;
    else carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights,
                                 Domain domain)
    : atoms_(std::move(atoms)), weights_(std::move(weights)), domain_(domain) {
  require(atoms_.size() == weights_.size(), Errc::invalid_argument,
          "measure: " + std::to_string(atoms_.size()) + " atoms but " +
              std::to_string(weights_.size()) + " weights");
  require(!atoms_.empty(), Errc::invalid_argument, "measure: no atoms");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    require(std::isfinite(weights_[i]) && weights_[i] >= 0.0, Errc::invalid_argument,
            "measure: weight " + std::to_string(i) + " is negative or not finite");
    require(domain_.contains(atoms_[i]), Errc::invalid_argument,
            "measure: atom " + std::to_string(i) + " lies outside " + domain_.describe());
  }
  std::vector<double> sorted = atoms_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          Errc::invalid_argument, "measure: duplicate atom");
  total_mass_ = compensated_sum(weights_);
  require(std::isfinite(total_mass_), Errc::invalid_argument, "measure: total mass is not finite");
}

bool DiscreteMeasure::is_probability() const {
  return std::fabs(total_mass_ - 1.0) <= kProbabilityTolerance;
}

bool TensorMeasure::is_probability() const {
  return std::fabs(total_mass_ - 1.0) <= kProbabilityTolerance;
}

DiscreteMeasure uniform_grid_measure(double a, double b, std::size_t m) {
  require(m >= 1, Errc::invalid_argument, "grid: m must be at least 1");
  require(std::isfinite(a) && std::isfinite(b) && a < b, Errc::invalid_argument,
          "grid: need finite a < b");
  const double h = (b - a) / static_cast<double>(m);
  std::vector<double> atoms(m);
  for (std::size_t i = 0; i < m; ++i) atoms[i] = a + (static_cast<double>(i) + 0.5) * h;
  return DiscreteMeasure(std::move(atoms), std::vector<double>(m, h), Domain::interval(a, b));
}

DiscreteMeasure atomic_measure(std::vector<double> atoms, std::vector<double> weights,
                               Domain domain) {
  return DiscreteMeasure(std::move(atoms), std::move(weights), domain);
}

DiscreteMeasure sequence_measure(const Sequence& weights, std::size_t n) {
  require(n >= 1, Errc::invalid_argument, "sequence measure: n must be at least 1");
  std::vector<double> atoms(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms[i] = static_cast<double>(i + 1);
    w[i] = weights(i + 1);
  }
  return DiscreteMeasure(std::move(atoms), std::move(w), Domain::naturals());
}

TensorMeasure tensor_power(const DiscreteMeasure& m, std::size_t d, std::size_t cap) {
  require(d >= 1, Errc::invalid_argument, "tensor_power: d must be at least 1");
  const std::size_t base = m.size();
  std::size_t count = 1;
  for (std::size_t k = 0; k < d; ++k) {
    require(count <= cap / base, Errc::resource_limit,
            "tensor_power: " + std::to_string(base) + "^" + std::to_string(d) +
                " atoms exceeds cap " + std::to_string(cap));
    count *= base;
  }

  TensorMeasure t;
  t.dim_ = d;
  t.coords_.resize(count * d);
  t.weights_.resize(count);
  std::vector<std::size_t> digit(d, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double w = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      t.coords_[idx * d + k] = m.atoms()[digit[k]];
      w *= m.weights()[digit[k]];
    }
    t.weights_[idx] = w;
    for (std::size_t k = d; k-- > 0;) {
      if (++digit[k] < base) break;
      digit[k] = 0;
    }
  }
  t.total_mass_ = compensated_sum(t.weights_);
  return t;
}

}  // namespace kembed
