#include "kembed/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "kembed/error.hpp"
#include "kembed/linalg.hpp"

namespace kembed {

Kernel::Kernel(std::string name, Domain domain, Evaluator eval, Params params,
               std::optional<double> diagonal_sup, bool constant_plus)
    : name_(std::move(name)),
      domain_(domain),
      eval_(std::move(eval)),
      params_(std::move(params)),
      diagonal_sup_(diagonal_sup),
      constant_plus_(constant_plus) {}

Kernel min_kernel() {
  return Kernel("min", Domain::interval(0.0, 1.0), [](double s, double t) { return std::min(s, t); },
                {}, 1.0);
}

Kernel gaussian_kernel(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, Errc::invalid_argument,
          "gaussian kernel: sigma must be positive");
  const double scale = 1.0 / (2.0 * sigma * sigma);
  return Kernel(
      "gaussian", Domain::real_line(),
      [scale](double s, double t) {
        const double d = s - t;
        return std::exp(-d * d * scale);
      },
      {{"sigma", sigma}}, 1.0);
}

Kernel diagonal_sequence_kernel(Sequence nu) {
  require(static_cast<bool>(nu), Errc::invalid_argument,
          "diagonal_sequence kernel: missing nu generator");
  return Kernel("diagonal_sequence", Domain::naturals(), [nu = std::move(nu)](double s, double t) {
    if (s != t) return 0.0;
    const auto i = static_cast<std::uint64_t>(s);
    const double v = nu(i);
    require(v > 0.0 && std::isfinite(v), Errc::invalid_argument,
            "diagonal_sequence kernel: nu(" + std::to_string(i) + ") is not positive");
    return 1.0 / v;
  });
}

Kernel constant_plus_kernel(const Kernel& inner) {
  std::optional<double> sup;
  if (inner.diagonal_sup()) sup = 1.0 + *inner.diagonal_sup();
  return Kernel(
      "constant_plus(" + inner.name() + ")", inner.domain(),
      [inner](double s, double t) { return 1.0 + inner(s, t); }, inner.params(), sup, true);
}

Kernel zero_kernel(Domain domain) {
  return Kernel("zero", domain, [](double, double) { return 0.0; }, {}, 0.0);
}

namespace {

void reject_params(std::string_view name, const Params& params,
                   std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    (void)value;
    const bool known = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
    require(known, Errc::invalid_argument,
            "kernel '" + std::string(name) + "': unknown parameter '" + key + "'");
  }
}

}  // namespace

Kernel make_kernel(std::string_view name, const Params& params, const std::optional<Sequence>& nu,
                   const Kernel* inner) {
  if (name == "min") {
    reject_params(name, params, {});
    return min_kernel();
  }
  if (name == "gaussian") {
    reject_params(name, params, {"sigma"});
    auto it = params.find("sigma");
    require(it != params.end(), Errc::invalid_argument, "kernel 'gaussian': missing sigma");
    return gaussian_kernel(it->second);
  }
  if (name == "diagonal_sequence") {
    reject_params(name, params, {});
    require(nu.has_value(), Errc::invalid_argument, "kernel 'diagonal_sequence': missing nu");
    return diagonal_sequence_kernel(*nu);
  }
  if (name == "constant_plus") {
    require(inner != nullptr, Errc::invalid_argument, "kernel 'constant_plus': missing inner kernel");
    return constant_plus_kernel(*inner);
  }
  if (name == "zero") {
    reject_params(name, params, {});
    return zero_kernel();
  }
  fail(Errc::invalid_argument, "unknown kernel '" + std::string(name) + "'");
}

Eigen::MatrixXd gram(const Kernel& k, std::span<const double> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    require(k.domain().contains(points[i]), Errc::invalid_argument,
            "gram: point " + std::to_string(i) + " outside " + k.domain().describe());
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          Errc::invalid_argument, "gram: duplicate point");

  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = k(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

double psd_min_eig(const Eigen::MatrixXd& g) {
  require(g.rows() == g.cols() && g.rows() > 0, Errc::invalid_argument,
          "psd_min_eig: need a non-empty square matrix");
  require(linalg::max_asymmetry(g) <= 1e-12, Errc::invalid_argument,
          "psd_min_eig: matrix is not symmetric");
  const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(g);
  return ev(ev.size() - 1);
}

bool passes_psd(const Eigen::MatrixXd& g) {
  require(linalg::max_asymmetry(g) <= 1e-12, Errc::invalid_argument,
          "passes_psd: matrix is not symmetric");
  const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(g);
  const double norm = std::max(std::fabs(ev(0)), std::fabs(ev(ev.size() - 1)));
  return ev(ev.size() - 1) >= -kPsdRelativeTolerance * norm;
}

Subset::Subset(std::vector<std::uint32_t> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    require(elements_[i] >= 1, Errc::invalid_argument, "subset: elements must be >= 1");
    require(i == 0 || elements_[i - 1] < elements_[i], Errc::invalid_argument,
            "subset: elements must be strictly increasing");
  }
}

bool Subset::contains(std::uint32_t j) const {
  return std::binary_search(elements_.begin(), elements_.end(), j);
}

bool Subset::disjoint(const Subset& other) const {
  return std::none_of(elements_.begin(), elements_.end(),
                      [&](std::uint32_t j) { return other.contains(j); });
}

Subset Subset::united(const Subset& other) const {
  std::vector<std::uint32_t> merged;
  std::set_union(elements_.begin(), elements_.end(), other.elements_.begin(),
                 other.elements_.end(), std::back_inserter(merged));
  return Subset(std::move(merged));
}

std::string Subset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elements_[i]);
  }
  return s + "}";
}

double ku_eval(const Kernel& k, const Subset& u, std::span<const double> x,
               std::span<const double> y) {
  double prod = 1.0;
  for (std::uint32_t j : u.elements()) {
    require(j <= x.size() && j <= y.size(), Errc::invalid_argument,
            "ku_eval: coordinate " + std::to_string(j) + " beyond the provided sequences");
    prod *= k(x[j - 1], y[j - 1]);
  }
  return prod;
}

}  // namespace kembed
