#pragma once

#include <cstddef>
#include <optional>

#include "kembed/expr.hpp"
#include "kembed/verdict.hpp"

namespace kembed {

/// Declared asymptotics of the ratio r_i = mu_i / nu_i.
struct SequenceAnnotations {
  std::optional<double> ratio_limit;
  std::optional<bool> ratio_sup_finite;
  /// value = true: sum r_i diverges; value = false: summable (majorant given).
  std::optional<Justified> ratio_sum_divergent;
  std::optional<Justified> ratio_sq_sum_divergent;
};

/// Two positive sequences defining S: l2(nu) -> l2(mu) with kernel
/// k(i,j) = delta_ij / nu_i.
struct SequencePair {
  Sequence mu;
  Sequence nu;
  SequenceAnnotations annotations;
};

struct ProbeSummary {
  std::size_t horizon = 0;
  double probed_sup = 0.0;
  double first_ratio = 0.0;
  double tail_ratio = 0.0;
  double ratio_partial_sum = 0.0;
  double ratio_sq_partial_sum = 0.0;
};

/// Bounded / compact / Hilbert-Schmidt / kernel-in-L2 verdicts. The
/// implication chain (HS => L2 => compact => bounded, HS => compact) is
/// checked at construction; violating combinations throw invalid_argument.
class ExampleVerdicts {
 public:
  static ExampleVerdicts make(Verdict bounded, Verdict compact, Verdict hilbert_schmidt,
                              Verdict kernel_in_l2, ProbeSummary probe = {});

  const Verdict& bounded() const { return bounded_; }
  const Verdict& compact() const { return compact_; }
  const Verdict& hilbert_schmidt() const { return hilbert_schmidt_; }
  const Verdict& kernel_in_l2() const { return kernel_in_l2_; }
  const ProbeSummary& probe() const { return probe_; }

 private:
  ExampleVerdicts() = default;
  Verdict bounded_, compact_, hilbert_schmidt_, kernel_in_l2_;
  ProbeSummary probe_;
};

inline constexpr std::size_t kDefaultHorizon = 10'000;

/// Probes r_i for i <= horizon, checks the annotations against the probe
/// (annotation_conflict names the index), and issues verdicts.
ExampleVerdicts verdicts(const SequencePair& pair, std::size_t horizon = kDefaultHorizon);

/// mu_i = 1/i^2, nu_i = log(i+1)/i^2 with all four asymptotics declared.
SequencePair log_example();

/// mu = nu = base: bounded but not compact.
SequencePair equal_pair(Sequence base);

}  // namespace kembed
