#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kembed/expr.hpp"
#include "kembed/integral_operator.hpp"
#include "kembed/kernel.hpp"
#include "kembed/verdict.hpp"

namespace kembed {

/// Declared facts about a product-weight generator gamma_j.
struct ProductAnnotations {
  std::optional<double> gamma_limit;
  /// value = true: sum gamma_j < inf; value = false: the sum diverges.
  std::optional<Justified> gamma_summable;
  /// gamma_j is nonincreasing in j outside `large_indices`.
  bool nonincreasing = false;
  /// Finite superset of the indices j whose factor (gamma_j C^2 for
  /// criterion sequences, gamma_j lambda_1 for spectra) may reach 1.
  std::optional<std::vector<std::uint32_t>> large_indices;
  /// T(J) >= sum_{j > J} gamma_j.
  std::optional<Sequence> tail_majorant;
};

struct ProductWeights {
  Sequence gamma;
  ProductAnnotations annotations;
};

struct ExplicitWeights {
  std::vector<std::pair<Subset, double>> entries;
};

/// Weights gamma_u over finite subsets of N: either an explicit finite list
/// or product weights gamma_u = prod_{j in u} gamma_j with gamma_empty = 1.
class WeightSchema {
 public:
  /// Subsets must be distinct and weights strictly positive.
  static WeightSchema explicit_list(std::vector<std::pair<Subset, double>> entries);
  static WeightSchema product(Sequence gamma, ProductAnnotations annotations = {});

  /// Built-in rules with their annotations filled in: pow2 (2^-j),
  /// inverse_square (1/j^2), geometric (q^j, 0<q<1), constant (c).
  static WeightSchema pow2();
  static WeightSchema inverse_square();
  static WeightSchema geometric(double q);
  static WeightSchema constant(double c);

  bool is_product() const { return std::holds_alternative<ProductWeights>(v_); }
  const ProductWeights& product_weights() const { return std::get<ProductWeights>(v_); }
  const ExplicitWeights& explicit_weights() const { return std::get<ExplicitWeights>(v_); }

  /// gamma_j for product schemas (validated nonnegative).
  double gamma(std::uint32_t j) const;

 private:
  explicit WeightSchema(std::variant<ExplicitWeights, ProductWeights> v) : v_(std::move(v)) {}
  std::variant<ExplicitWeights, ProductWeights> v_;
};

/// Univariate embedding plus weights. C = ||S|| is taken from the top
/// singular value of the univariate model unless declared.
class IvarModel {
 public:
  IvarModel(EmbeddingModel univariate, WeightSchema schema,
            std::optional<double> declared_norm_sq = std::nullopt);

  const EmbeddingModel& univariate() const { return univariate_; }
  const Kernel& kernel() const { return univariate_.kernel(); }
  const WeightSchema& schema() const { return schema_; }
  double norm_sq() const { return norm_sq_; }
  double norm() const;
  /// Atom count C was computed at; empty when C was declared.
  std::optional<std::size_t> norm_level() const { return norm_level_; }

 private:
  EmbeddingModel univariate_;
  WeightSchema schema_;
  double norm_sq_ = 0.0;
  std::optional<std::size_t> norm_level_;
};

double weight_of(const WeightSchema& s, const Subset& u);

/// gamma_u C^{2|u|}
double criterion_value(const IvarModel& m, const Subset& u);

/// sqrt(gamma_u) C^{|u|}: the norm of H_u -> L2 under the H_gamma norm.
double component_embedding_norm(const IvarModel& m, const Subset& u);

struct CriterionEntry {
  Subset u;
  double value = 0.0;
};

/// Top-n subsets by criterion value; ties by smaller |u|, then
/// lexicographic elements.
std::vector<CriterionEntry> enumerate_by_criterion(const IvarModel& m, std::size_t n);

enum class CompactnessKind { compact_certified, non_compact_certified, inconclusive };
std::string_view to_string(CompactnessKind k);

struct CriterionVerdict {
  CompactnessKind verdict = CompactnessKind::inconclusive;
  std::string witness;
  std::string justification;
  /// Probed (j, gamma_j C^2) pairs when inconclusive.
  std::vector<std::pair<std::uint32_t, double>> decay_table;
};

CriterionVerdict thm2_verdict(const IvarModel& m);

struct KGammaValue {
  double value = 0.0;
  std::optional<double> tail_bound;  // empty: no majorant declared
};

/// K_gamma(x, y) truncated to coordinates 1..J (product weights) or summed
/// exactly over the listed subsets (explicit weights, tail 0).
KGammaValue kgamma_eval(const IvarModel& m, std::span<const double> x, std::span<const double> y,
                        std::size_t truncation);

/// A point of Omega^N: a finite prefix, then optionally a constant tail,
/// with optional declared bounds on k(x_j, x_j) past the prefix.
struct PointSequence {
  std::vector<double> prefix;
  std::optional<double> constant_tail;
  std::optional<double> diag_upper;
  std::optional<double> diag_lower;
};

/// Is sum_u gamma_u k_u(x, x) finite?
Verdict x_membership(const IvarModel& m, const PointSequence& x);

/// sum_u ||f_u||^2 / gamma_u
double hgamma_norm_sq(const IvarModel& m,
                      const std::vector<std::pair<Subset, double>>& component_norms);

struct TensorEntry {
  Subset u;
  std::vector<std::uint32_t> eigen_indices;  // aligned with u's elements, 1-based
  double value = 0.0;
};

/// Top-n values of gamma_u prod_{j in u} lambda_{a_j}. Only meaningful when
/// the components H_u are mutually L2-orthogonal, which the caller must
/// assert; otherwise the call is refused.
std::vector<double> tensor_spectrum_topn(const IvarModel& m, std::span<const double> eigenvalues,
                                         std::size_t n, bool assume_l2_orthogonal);
std::vector<TensorEntry> tensor_spectrum_entries(const IvarModel& m,
                                                 std::span<const double> eigenvalues,
                                                 std::size_t n, bool assume_l2_orthogonal);

/// Canonical order shared by both enumerations.
bool canonical_before(const TensorEntry& a, const TensorEntry& b);

}  // namespace kembed
