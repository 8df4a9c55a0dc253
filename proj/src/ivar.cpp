#include "kembed/ivar.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "enumeration.hpp"
#include "kembed/error.hpp"
#include "probe.hpp"

namespace kembed {

namespace {

constexpr std::size_t kLimitProbeHorizon = 10'000;
constexpr std::uint32_t kMonotoneProbe = 4'096;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

WeightSchema WeightSchema::explicit_list(std::vector<std::pair<Subset, double>> entries) {
  std::set<Subset> seen;
  for (const auto& [u, g] : entries) {
    require(std::isfinite(g) && g > 0.0, Errc::invalid_argument,
            "explicit weights: gamma for " + u.to_string() + " must be positive");
    require(seen.insert(u).second, Errc::invalid_argument,
            "explicit weights: duplicate subset " + u.to_string());
  }
  return WeightSchema(ExplicitWeights{std::move(entries)});
}

WeightSchema WeightSchema::product(Sequence gamma, ProductAnnotations annotations) {
  require(static_cast<bool>(gamma), Errc::invalid_argument, "product weights: missing generator");
  if (annotations.large_indices) {
    auto& l = *annotations.large_indices;
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    require(l.empty() || l.front() >= 1, Errc::invalid_argument,
            "product weights: large indices must be >= 1");
  }
  return WeightSchema(ProductWeights{std::move(gamma), std::move(annotations)});
}

WeightSchema WeightSchema::pow2() {
  ProductAnnotations a;
  a.gamma_limit = 0.0;
  a.gamma_summable = Justified{true, "geometric series sum 2^-j = 1"};
  a.nonincreasing = true;
  a.tail_majorant = Sequence{[](std::uint64_t J) { return std::ldexp(1.0, -static_cast<int>(J)); },
                             "2^-J"};
  return product(Sequence{[](std::uint64_t j) { return std::ldexp(1.0, -static_cast<int>(j)); },
                          "2^-j"},
                 std::move(a));
}

WeightSchema WeightSchema::inverse_square() {
  ProductAnnotations a;
  a.gamma_limit = 0.0;
  a.gamma_summable = Justified{true, "p-series with p = 2"};
  a.nonincreasing = true;
  a.tail_majorant = Sequence{[](std::uint64_t J) { return J == 0 ? 2.0 : 1.0 / static_cast<double>(J); },
                             "1/J (integral comparison)"};
  return product(Sequence{[](std::uint64_t j) {
                            const double x = static_cast<double>(j);
                            return 1.0 / (x * x);
                          },
                          "1/j^2"},
                 std::move(a));
}

WeightSchema WeightSchema::geometric(double q) {
  require(q > 0.0 && q < 1.0, Errc::invalid_argument, "geometric weights: need 0 < q < 1");
  ProductAnnotations a;
  a.gamma_limit = 0.0;
  a.gamma_summable = Justified{true, "geometric series with ratio " + fmt(q)};
  a.nonincreasing = true;
  a.tail_majorant = Sequence{
      [q](std::uint64_t J) { return std::pow(q, static_cast<double>(J) + 1.0) / (1.0 - q); },
      "q^(J+1)/(1-q)"};
  return product(Sequence{[q](std::uint64_t j) { return std::pow(q, static_cast<double>(j)); },
                          fmt(q) + "^j"},
                 std::move(a));
}

WeightSchema WeightSchema::constant(double c) {
  require(std::isfinite(c) && c >= 0.0, Errc::invalid_argument,
          "constant weights: need a finite c >= 0");
  ProductAnnotations a;
  a.gamma_limit = c;
  a.nonincreasing = true;
  if (c > 0.0) a.gamma_summable = Justified{false, "constant positive terms"};
  else a.gamma_summable = Justified{true, "all terms vanish"};
  return product(Sequence{[c](std::uint64_t) { return c; }, fmt(c)}, std::move(a));
}

double WeightSchema::gamma(std::uint32_t j) const {
  const double g = product_weights().gamma(j);
  require(std::isfinite(g) && g >= 0.0, Errc::invalid_argument,
          "product weights: gamma_" + std::to_string(j) + " = " + fmt(g) +
              " is negative or not finite");
  return g;
}

IvarModel::IvarModel(EmbeddingModel univariate, WeightSchema schema,
                     std::optional<double> declared_norm_sq)
    : univariate_(std::move(univariate)), schema_(std::move(schema)) {
  require(univariate_.measure().is_probability(), Errc::invalid_argument,
          "ivar model: the univariate measure must be a probability measure (mass " +
              fmt(univariate_.measure().total_mass()) + ")");
  require(!univariate_.kernel().is_constant_plus(), Errc::invalid_argument,
          "ivar model: kernel '" + univariate_.kernel().name() +
              "' contains constants; the empty-set component already carries them");
  if (declared_norm_sq) {
    require(std::isfinite(*declared_norm_sq) && *declared_norm_sq >= 0.0, Errc::invalid_argument,
            "ivar model: declared squared norm must be finite and nonnegative");
    norm_sq_ = *declared_norm_sq;
  } else {
    const SpectralReport r = spectrum(univariate_, 1);
    norm_sq_ = std::max(r.raw_eigenvalues.front(), 0.0);
    norm_level_ = univariate_.size();
  }
}

double IvarModel::norm() const { return std::sqrt(norm_sq_); }

double weight_of(const WeightSchema& s, const Subset& u) {
  if (!s.is_product()) {
    for (const auto& [v, g] : s.explicit_weights().entries)
      if (v == u) return g;
    return 0.0;
  }
  double w = 1.0;
  for (std::uint32_t j : u.elements()) w *= s.gamma(j);
  return w;
}

double criterion_value(const IvarModel& m, const Subset& u) {
  return weight_of(m.schema(), u) * std::pow(m.norm_sq(), static_cast<double>(u.size()));
}

double component_embedding_norm(const IvarModel& m, const Subset& u) {
  return std::sqrt(weight_of(m.schema(), u)) * std::pow(m.norm(), static_cast<double>(u.size()));
}

namespace {

// Validates the enumeration preconditions for a product schema whose
// per-coordinate factor is gamma_j * multiplier, returning the large set.
std::vector<std::uint32_t> enumeration_large_set(const WeightSchema& s, double multiplier,
                                                 const char* what) {
  const ProductAnnotations& ann = s.product_weights().annotations;
  require(ann.nonincreasing, Errc::not_enumerable,
          std::string(what) + ": product generator has no declared monotonicity");
  const std::vector<std::uint32_t> large = ann.large_indices.value_or(std::vector<std::uint32_t>{});
  auto is_large = [&](std::uint32_t j) { return std::binary_search(large.begin(), large.end(), j); };

  double prev = -1.0;
  for (std::uint32_t j = 1; j <= kMonotoneProbe; ++j) {
    if (is_large(j)) continue;
    const double g = s.gamma(j);
    if (g * multiplier >= 1.0) {
      if (!ann.large_indices)
        fail(Errc::not_enumerable,
             std::string(what) + ": factor at index " + std::to_string(j) + " is " +
                 fmt(g * multiplier) + " >= 1 and no finite large-index set is declared");
      fail(Errc::annotation_conflict,
           std::string(what) + ": index " + std::to_string(j) +
               " has factor >= 1 but is missing from large_indices");
    }
    if (prev >= 0.0 && g > prev)
      fail(Errc::annotation_conflict, std::string(what) + ": gamma increases at index " +
                                          std::to_string(j) + " despite the nonincreasing declaration");
    prev = g;
  }
  return large;
}

std::vector<CriterionEntry> to_criterion(std::vector<TensorEntry> entries) {
  std::vector<CriterionEntry> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(CriterionEntry{std::move(e.u), e.value});
  return out;
}

}  // namespace

std::vector<CriterionEntry> enumerate_by_criterion(const IvarModel& m, std::size_t n) {
  const WeightSchema& s = m.schema();
  if (!s.is_product()) {
    std::vector<TensorEntry> all;
    for (const auto& [u, g] : s.explicit_weights().entries) {
      (void)g;
      all.push_back(TensorEntry{u, std::vector<std::uint32_t>(u.size(), 1), criterion_value(m, u)});
    }
    std::sort(all.begin(), all.end(), canonical_before);
    if (all.size() > n) all.resize(n);
    return to_criterion(std::move(all));
  }
  detail::ProductSearch search;
  search.factor = [&s](std::uint32_t j) { return s.gamma(j); };
  search.large = enumeration_large_set(s, m.norm_sq(), "enumerate_by_criterion");
  search.eigen_count = 1;
  search.value = [&m](const Subset& u, std::span<const std::uint32_t>) {
    return criterion_value(m, u);
  };
  return to_criterion(detail::top_products(search, n));
}

std::string_view to_string(CompactnessKind k) {
  switch (k) {
    case CompactnessKind::compact_certified: return "CompactCertified";
    case CompactnessKind::non_compact_certified: return "NonCompactCertified";
    case CompactnessKind::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CriterionVerdict thm2_verdict(const IvarModel& m) {
  CriterionVerdict v;
  const std::string norm_note =
      m.norm_level() ? "C = " + fmt(m.norm()) + " estimated from the univariate model at " +
                           std::to_string(*m.norm_level()) + " atoms"
                     : "C = " + fmt(m.norm()) + " declared";

  if (!m.schema().is_product()) {
    v.verdict = CompactnessKind::compact_certified;
    v.justification = "explicit weights: U_gamma is finite (" +
                      std::to_string(m.schema().explicit_weights().entries.size()) +
                      " subsets), so the criterion sequence is eventually 0";
    return v;
  }

  const WeightSchema& s = m.schema();
  const ProductAnnotations& ann = s.product_weights().annotations;
  const double c2 = m.norm_sq();
  if (ann.gamma_limit) {
    const double limit = *ann.gamma_limit;
    require(std::isfinite(limit) && limit >= 0.0, Errc::annotation_conflict,
            "gamma_limit must be finite and nonnegative");
    detail::check_declared_limit(s.gamma(1), s.gamma(kLimitProbeHorizon), kLimitProbeHorizon,
                                 limit, "gamma_limit: gamma_j");
  }

  if (c2 == 0.0) {
    v.verdict = CompactnessKind::compact_certified;
    v.justification = "univariate embedding norm is 0, so every nonempty criterion value is 0 (" +
                      norm_note + ")";
    return v;
  }
  if (!std::isfinite(c2)) {
    v.verdict = CompactnessKind::inconclusive;
    v.justification = "univariate norm is not finite";
    return v;
  }

  if (ann.gamma_limit && *ann.gamma_limit == 0.0) {
    v.verdict = CompactnessKind::compact_certified;
    v.justification =
        "product weights with gamma_j -> 0 (declared): c_j = gamma_j C^2 -> 0. Given delta > 0, "
        "only finitely many c_j exceed 1, so M = prod max(1, c_j) is finite; a subset u with "
        "criterion prod_{j in u} c_j >= delta has every c_j >= delta/M, leaving finitely many "
        "candidate indices and hence finitely many such u. The criterion sequence therefore "
        "tends to 0 along every enumeration. Conditional on 0 < C < inf: " +
        norm_note;
    return v;
  }
  if (ann.gamma_limit && *ann.gamma_limit > 0.0) {
    const double c = *ann.gamma_limit * c2;
    v.verdict = CompactnessKind::non_compact_certified;
    v.witness = "singletons {j}, j >= 1";
    v.justification = "criterion({j}) = gamma_j C^2 -> " + fmt(c) +
                      " > 0 along the singleton family, so the limsup is positive. "
                      "Conditional on 0 < C < inf: " +
                      norm_note;
    return v;
  }

  v.verdict = CompactnessKind::inconclusive;
  v.justification = "no gamma_limit declared; probed singleton criterion values attached";
  for (std::uint32_t j : {1u, 10u, 100u, 1000u, 10000u}) v.decay_table.emplace_back(j, s.gamma(j) * c2);
  return v;
}

KGammaValue kgamma_eval(const IvarModel& m, std::span<const double> x, std::span<const double> y,
                        std::size_t truncation) {
  const Kernel& k = m.kernel();
  if (!m.schema().is_product()) {
    double sum = 0.0;
    for (const auto& [u, g] : m.schema().explicit_weights().entries) sum += g * ku_eval(k, u, x, y);
    return {sum, 0.0};
  }
  require(truncation <= x.size() && truncation <= y.size(), Errc::invalid_argument,
          "kgamma_eval: truncation " + std::to_string(truncation) + " beyond the provided points");
  double value = 1.0;
  for (std::size_t j = 1; j <= truncation; ++j) {
    require(k.domain().contains(x[j - 1]) && k.domain().contains(y[j - 1]),
            Errc::invalid_argument,
            "kgamma_eval: coordinate " + std::to_string(j) + " outside the kernel domain");
    value *= 1.0 + m.schema().gamma(static_cast<std::uint32_t>(j)) * k(x[j - 1], y[j - 1]);
  }
  KGammaValue out{value, std::nullopt};
  const auto& ann = m.schema().product_weights().annotations;
  if (ann.tail_majorant && k.diagonal_sup()) {
    const double tail_sum = (*ann.tail_majorant)(truncation);
    out.tail_bound = std::fabs(value) * std::expm1(*k.diagonal_sup() * tail_sum);
  }
  return out;
}

Verdict x_membership(const IvarModel& m, const PointSequence& x) {
  if (!m.schema().is_product())
    return Verdict::yes("explicit weights: the defining sum has finitely many terms");

  const Kernel& k = m.kernel();
  for (double p : x.prefix)
    require(k.domain().contains(p), Errc::invalid_argument,
            "x_membership: prefix point outside the kernel domain");
  std::optional<double> upper = x.diag_upper;
  std::optional<double> lower = x.diag_lower;
  if (x.constant_tail) {
    require(k.domain().contains(*x.constant_tail), Errc::invalid_argument,
            "x_membership: tail point outside the kernel domain");
    const double d = k(*x.constant_tail, *x.constant_tail);
    if (!upper) upper = d;
    if (!lower) lower = d;
  }
  if (!upper) upper = k.diagonal_sup();

  const auto& ann = m.schema().product_weights().annotations;
  const std::string product_form =
      "sum_u gamma_u k_u(x,x) = prod_j (1 + gamma_j k(x_j,x_j)) is finite iff sum_j gamma_j "
      "k(x_j,x_j) is finite";
  if (upper && *upper == 0.0)
    return Verdict::yes(product_form + "; k(x_j,x_j) = 0 past the prefix");
  if (upper && ann.gamma_summable && ann.gamma_summable->value)
    return Verdict::yes(product_form + "; k(x_j,x_j) <= " + fmt(*upper) +
                        " and sum gamma_j < inf (" + ann.gamma_summable->justification + ")");
  if (lower && *lower > 0.0 && ann.gamma_summable && !ann.gamma_summable->value)
    return Verdict::no(product_form + "; k(x_j,x_j) >= " + fmt(*lower) +
                       " and sum gamma_j = inf (" + ann.gamma_summable->justification + ")");
  return Verdict::inconclusive("no diagonal majorant or summability declaration decides the sum");
}

double hgamma_norm_sq(const IvarModel& m,
                      const std::vector<std::pair<Subset, double>>& component_norms) {
  std::set<Subset> seen;
  double sum = 0.0;
  for (const auto& [u, norm] : component_norms) {
    require(seen.insert(u).second, Errc::invalid_argument,
            "hgamma_norm_sq: duplicate component " + u.to_string());
    const double g = weight_of(m.schema(), u);
    require(g > 0.0, Errc::invalid_argument,
            "hgamma_norm_sq: gamma_" + u.to_string() + " = 0, so f_u is not in H_gamma");
    sum += norm * norm / g;
  }
  return sum;
}

std::vector<TensorEntry> tensor_spectrum_entries(const IvarModel& m,
                                                 std::span<const double> eigenvalues,
                                                 std::size_t n, bool assume_l2_orthogonal) {
  require(assume_l2_orthogonal, Errc::refused,
          "tensor_spectrum_topn: the product form of the spectrum needs mutually L2-orthogonal "
          "components; set assume_l2_orthogonal to assert it");
  require(!eigenvalues.empty(), Errc::invalid_argument, "tensor_spectrum_topn: no eigenvalues");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    require(std::isfinite(eigenvalues[i]) && eigenvalues[i] > 0.0, Errc::invalid_argument,
            "tensor_spectrum_topn: eigenvalues must be positive");
    require(i == 0 || eigenvalues[i] <= eigenvalues[i - 1], Errc::invalid_argument,
            "tensor_spectrum_topn: eigenvalues must be descending");
  }
  const std::vector<double> lambda(eigenvalues.begin(), eigenvalues.end());
  const WeightSchema& s = m.schema();
  detail::ValueFn value = [&s, lambda](const Subset& u, std::span<const std::uint32_t> a) {
    double prod = 1.0;
    for (std::uint32_t idx : a) prod *= lambda[idx - 1];
    return weight_of(s, u) * prod;
  };
  if (!s.is_product()) return detail::top_explicit(s.explicit_weights().entries, lambda.size(), value, n);

  detail::ProductSearch search;
  search.factor = [&s](std::uint32_t j) { return s.gamma(j); };
  search.large = enumeration_large_set(s, lambda.front(), "tensor_spectrum_topn");
  search.eigen_count = lambda.size();
  search.value = value;
  return detail::top_products(search, n);
}

std::vector<double> tensor_spectrum_topn(const IvarModel& m, std::span<const double> eigenvalues,
                                         std::size_t n, bool assume_l2_orthogonal) {
  std::vector<double> out;
  for (const auto& e : tensor_spectrum_entries(m, eigenvalues, n, assume_l2_orthogonal))
    out.push_back(e.value);
  return out;
}

}  // namespace kembed
