#include "kembed/integral_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kembed/error.hpp"
#include "kembed/linalg.hpp"

namespace kembed {

EmbeddingModel::EmbeddingModel(Kernel kernel, DiscreteMeasure measure)
    : kernel_(std::move(kernel)), measure_(std::move(measure)) {
  require(kernel_.domain().covers(measure_.domain()), Errc::invalid_argument,
          "model: measure domain " + measure_.domain().describe() + " is not inside kernel '" +
              kernel_.name() + "' domain " + kernel_.domain().describe());
  for (double t : measure_.atoms())
    require(kernel_.domain().contains(t), Errc::invalid_argument,
            "model: atom outside the kernel domain");
}

Eigen::MatrixXd l2_matrix(const EmbeddingModel& m) {
  const auto atoms = m.measure().atoms();
  const auto weights = m.measure().weights();
  const auto n = static_cast<Eigen::Index>(atoms.size());
  Eigen::VectorXd root(n);
  for (Eigen::Index i = 0; i < n; ++i) root(i) = std::sqrt(weights[static_cast<std::size_t>(i)]);

  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double tj = atoms[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = root(i) * m.kernel()(atoms[static_cast<std::size_t>(i)], tj) * root(j);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

SpectralReport spectrum(const EmbeddingModel& m, std::size_t n) {
  require(n <= m.size(), Errc::invalid_argument,
          "spectrum: requested " + std::to_string(n) + " values from " + std::to_string(m.size()) +
              " atoms");
  const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(l2_matrix(m));
  const double norm = std::max(std::fabs(ev(0)), std::fabs(ev(ev.size() - 1)));
  const double floor = -kPsdRelativeTolerance * norm;

  SpectralReport r;
  r.raw_eigenvalues.assign(ev.data(), ev.data() + ev.size());
  if (ev(ev.size() - 1) < floor)
    fail(Errc::numeric_failure, "spectrum: eigenvalue " + std::to_string(ev(ev.size() - 1)) +
                                    " below PSD tolerance; kernel '" + m.kernel().name() +
                                    "' is not positive semidefinite on these atoms");
  r.singular_values.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    r.singular_values.push_back(std::sqrt(std::max(ev(static_cast<Eigen::Index>(j)), 0.0)));
  r.operator_norm = std::sqrt(std::max(ev(0), 0.0));
  r.hs_trace = hs_trace(m);
  r.kernel_l2_sq = kernel_l2_norm_sq(m);
  r.atoms_count = m.size();
  if (m.measure().domain().kind == Domain::Kind::naturals) r.truncated_at = m.size();
  return r;
}

double hs_trace(const EmbeddingModel& m) {
  const auto atoms = m.measure().atoms();
  const auto weights = m.measure().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) sum += weights[i] * m.kernel()(atoms[i], atoms[i]);
  return sum;
}

double kernel_l2_norm_sq(const EmbeddingModel& m) {
  const auto atoms = m.measure().atoms();
  const auto weights = m.measure().weights();
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const double k = m.kernel()(atoms[i], atoms[j]);
      row += weights[j] * k * k;
    }
    total += weights[i] * row;
  }
  return total;
}

std::vector<double> apply_T(const EmbeddingModel& m, std::span<const double> f) {
  const auto atoms = m.measure().atoms();
  const auto weights = m.measure().weights();
  require(f.size() == atoms.size(), Errc::invalid_argument,
          "apply_T: " + std::to_string(f.size()) + " samples for " +
              std::to_string(atoms.size()) + " atoms");
  std::vector<double> out(atoms.size(), 0.0);
  for (std::size_t s = 0; s < atoms.size(); ++s) {
    double acc = 0.0;
    for (std::size_t t = 0; t < atoms.size(); ++t)
      acc += weights[t] * m.kernel()(atoms[s], atoms[t]) * f[t];
    out[s] = acc;
  }
  return out;
}

double t3_functional(const EmbeddingModel& m, std::span<const double> f) {
  const std::vector<double> tf = apply_T(m, f);
  const auto weights = m.measure().weights();
  double sum = 0.0;
  for (std::size_t s = 0; s < tf.size(); ++s) sum += weights[s] * tf[s] * tf[s];
  return sum;
}

}  // namespace kembed
