#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kembed/integral_operator.hpp"

namespace kembed {

/// A family of finite models indexed by atom count. Interval ladders refine
/// a fixed measure (equal total mass); naturals ladders truncate a measure
/// on the positive integers to {1..level} (nested atoms).
struct RefinementLadder {
  std::function<EmbeddingModel(std::size_t level)> factory;
  std::vector<std::size_t> levels;
};

RefinementLadder grid_ladder(Kernel kernel, double a, double b, std::vector<std::size_t> levels);
RefinementLadder truncation_ladder(Kernel kernel, Sequence mu, std::vector<std::size_t> levels);

enum class EvidenceVerdict { compact, non_compact, inconclusive };
std::string_view to_string(EvidenceVerdict v);

struct EvidenceOptions {
  double stabilization_threshold = 1e-3;  // relative change between the two finest levels
  double decay_fraction = 0.1;            // sigma_n < decay_fraction * sigma_1
  std::size_t plateau_run = 5;
  double plateau_spread = 1e-3;
};

struct CompactnessEvidence {
  std::vector<std::size_t> levels;
  std::vector<std::vector<double>> sigma_table;  // [level][j]
  std::vector<bool> stabilized;                  // per j
  std::vector<double> hs_traces;                 // per level
  EvidenceVerdict verdict = EvidenceVerdict::inconclusive;
  std::string notes;
};

/// Compares the nonzero spectra of the T_HH section (G W) and the T_L2L2
/// section (W^1/2 G W^1/2) computed along independent routes. Returns the
/// largest eigenvalue gap relative to the leading eigenvalue.
double spectral_equivalence_check(const Kernel& k, const DiscreteMeasure& m);

inline constexpr std::size_t kEquivalenceMaxAtoms = 200;

using SampleFamily =
    std::function<std::vector<double>(std::size_t n, std::span<const double> atoms)>;

struct WeakNullTable {
  std::vector<std::size_t> levels;
  std::vector<std::size_t> indices;          // family indices n
  std::vector<std::vector<double>> t3;       // [level][n]
  std::vector<bool> strictly_decreasing;     // per level
};

/// t3_functional(f_n) per family member and level. The caller declares that
/// every f_n has H-norm at most 1 and tends to 0 pointwise; neither is checked.
WeakNullTable weak_null_decay_check(const RefinementLadder& ladder,
                                    const std::vector<std::size_t>& indices,
                                    const SampleFamily& family);

CompactnessEvidence compactness_evidence(const RefinementLadder& ladder, std::size_t n,
                                         const EvidenceOptions& options = {});

}  // namespace kembed
