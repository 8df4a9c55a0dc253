#include "kembed/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kembed/error.hpp"
#include "kembed/linalg.hpp"

namespace kembed {

std::string_view to_string(EvidenceVerdict v) {
  switch (v) {
    case EvidenceVerdict::compact: return "EvidenceCompact";
    case EvidenceVerdict::non_compact: return "EvidenceNonCompact";
    case EvidenceVerdict::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

RefinementLadder grid_ladder(Kernel kernel, double a, double b, std::vector<std::size_t> levels) {
  return {[kernel = std::move(kernel), a, b](std::size_t level) {
            return EmbeddingModel(kernel, uniform_grid_measure(a, b, level));
          },
          std::move(levels)};
}

RefinementLadder truncation_ladder(Kernel kernel, Sequence mu, std::vector<std::size_t> levels) {
  return {[kernel = std::move(kernel), mu = std::move(mu)](std::size_t level) {
            return EmbeddingModel(kernel, sequence_measure(mu, level));
          },
          std::move(levels)};
}

double spectral_equivalence_check(const Kernel& k, const DiscreteMeasure& m) {
  require(m.size() <= kEquivalenceMaxAtoms, Errc::invalid_argument,
          "spectral_equivalence_check: at most " + std::to_string(kEquivalenceMaxAtoms) +
              " atoms");
  const EmbeddingModel model(k, m);

  // Route 1: W^1/2 G W^1/2 through LAPACK.
  const Eigen::VectorXd a = linalg::symmetric_eigenvalues(l2_matrix(model));

  // Route 2: factor G = F F^T with Eigen, then G W ~ F^T W F.
  const Eigen::MatrixXd g = gram(k, m.atoms());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gsolver(g);
  require(gsolver.info() == Eigen::Success, Errc::numeric_failure,
          "spectral_equivalence_check: Gram eigensolver did not converge");
  const Eigen::VectorXd lam = gsolver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd f = gsolver.eigenvectors() * lam.asDiagonal();
  const Eigen::Map<const Eigen::VectorXd> w(m.weights().data(),
                                            static_cast<Eigen::Index>(m.size()));
  const Eigen::MatrixXd b_mat = f.transpose() * w.asDiagonal() * f;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolver(
      0.5 * (b_mat + b_mat.transpose()), Eigen::EigenvaluesOnly);
  require(bsolver.info() == Eigen::Success, Errc::numeric_failure,
          "spectral_equivalence_check: section eigensolver did not converge");
  Eigen::VectorXd b = bsolver.eigenvalues().reverse();

  const double scale = std::max(std::fabs(a(0)), std::fabs(b(0)));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a(i) - b(i)));
  return worst / scale;
}

namespace {

void validate_ladder(const RefinementLadder& ladder, const std::vector<EmbeddingModel>& models) {
  for (std::size_t i = 1; i < models.size(); ++i) {
    require(models[i].kernel().name() == models[0].kernel().name(), Errc::invalid_argument,
            "ladder: levels use different kernels");
    const auto& prev = models[i - 1].measure();
    const auto& cur = models[i].measure();
    require(prev.domain().kind == cur.domain().kind, Errc::invalid_argument,
            "ladder: levels mix domains");
    if (cur.domain().kind == Domain::Kind::interval) {
      require(std::fabs(cur.total_mass() - models[0].measure().total_mass()) <= 1e-9,
              Errc::invalid_argument,
              "ladder: total mass drifts at level " + std::to_string(ladder.levels[i]));
    } else {
      bool nested = prev.size() <= cur.size();
      for (std::size_t j = 0; nested && j < prev.size(); ++j)
        nested = prev.atoms()[j] == cur.atoms()[j] && prev.weights()[j] == cur.weights()[j];
      require(nested, Errc::invalid_argument,
              "ladder: truncations are not nested at level " + std::to_string(ladder.levels[i]));
    }
  }
}

std::vector<EmbeddingModel> build_models(const RefinementLadder& ladder) {
  require(static_cast<bool>(ladder.factory), Errc::invalid_argument, "ladder: missing factory");
  for (std::size_t i = 1; i < ladder.levels.size(); ++i)
    require(ladder.levels[i - 1] < ladder.levels[i], Errc::invalid_argument,
            "ladder: levels must be strictly increasing");
  std::vector<EmbeddingModel> models;
  models.reserve(ladder.levels.size());
  for (std::size_t level : ladder.levels) models.push_back(ladder.factory(level));
  validate_ladder(ladder, models);
  return models;
}

}  // namespace

WeakNullTable weak_null_decay_check(const RefinementLadder& ladder,
                                    const std::vector<std::size_t>& indices,
                                    const SampleFamily& family) {
  const std::vector<EmbeddingModel> models = build_models(ladder);
  WeakNullTable table;
  table.levels = ladder.levels;
  table.indices = indices;
  for (const auto& model : models) {
    std::vector<double> row;
    row.reserve(indices.size());
    for (std::size_t n : indices) {
      const std::vector<double> f = family(n, model.measure().atoms());
      require(f.size() == model.size(), Errc::invalid_argument,
              "weak_null_decay_check: family member " + std::to_string(n) + " has " +
                  std::to_string(f.size()) + " samples for " + std::to_string(model.size()) +
                  " atoms");
      row.push_back(t3_functional(model, f));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < row.size(); ++i) decreasing = decreasing && row[i] < row[i - 1];
    table.t3.push_back(std::move(row));
    table.strictly_decreasing.push_back(decreasing);
  }
  return table;
}

CompactnessEvidence compactness_evidence(const RefinementLadder& ladder, std::size_t n,
                                         const EvidenceOptions& options) {
  require(ladder.levels.size() >= 3, Errc::invalid_argument,
          "compactness_evidence: need at least 3 levels");
  require(n >= 1 && n <= ladder.levels.front(), Errc::invalid_argument,
          "compactness_evidence: n must be in [1, smallest level]");
  const std::vector<EmbeddingModel> models = build_models(ladder);

  CompactnessEvidence ev;
  ev.levels = ladder.levels;
  for (const auto& model : models) {
    SpectralReport r = spectrum(model, n);
    ev.sigma_table.push_back(std::move(r.singular_values));
    ev.hs_traces.push_back(r.hs_trace);
  }

  const auto& fine = ev.sigma_table.back();
  const auto& prev = ev.sigma_table[ev.sigma_table.size() - 2];
  bool all_stable = true;
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = std::fabs(fine[j] - prev[j]);
    const bool stable = diff == 0.0 || diff < options.stabilization_threshold * std::fabs(fine[j]);
    ev.stabilized.push_back(stable);
    all_stable = all_stable && stable;
  }

  // Longest run of near-equal values ending at the last reported index.
  std::size_t run = 0;
  double run_max = 0.0;
  double run_min = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    const double hi = std::max(run == 0 ? fine[j] : run_max, fine[j]);
    const double lo = std::min(run == 0 ? fine[j] : run_min, fine[j]);
    if (hi <= 0.0 || (hi - lo) >= options.plateau_spread * hi) break;
    run_max = hi;
    run_min = lo;
    ++run;
  }
  const double sigma1 = fine[0];
  const bool plateau = run >= options.plateau_run && run_max >= options.decay_fraction * sigma1;
  const bool decayed = fine[n - 1] < options.decay_fraction * sigma1;

  std::ostringstream notes;
  notes.precision(6);
  if (plateau) {
    ev.verdict = EvidenceVerdict::non_compact;
    notes << "plateau of " << run << " singular values at " << run_max
          << " in the reported tail; ";
  } else if (all_stable && decayed) {
    ev.verdict = EvidenceVerdict::compact;
    notes << "all " << n << " singular values stabilized; sigma_" << n << "/sigma_1 = "
          << fine[n - 1] / sigma1 << "; ";
  } else {
    ev.verdict = EvidenceVerdict::inconclusive;
    notes << (all_stable ? "stabilized" : "not stabilized") << ", "
          << (decayed ? "decayed" : "no decay below threshold") << " (sigma_" << n
          << "/sigma_1 = " << (sigma1 > 0.0 ? fine[n - 1] / sigma1 : 0.0) << "); ";
  }

  const double h_last = ev.hs_traces.back();
  const double h_prev = ev.hs_traces[ev.hs_traces.size() - 2];
  const double h_change = h_last == 0.0 ? 0.0 : std::fabs(h_last - h_prev) / std::fabs(h_last);
  if (h_change < options.stabilization_threshold)
    notes << "hs_trace bounded across levels (" << h_last << ")";
  else
    notes << "hs_trace partial sums growing (" << h_prev << " -> " << h_last << ")";
  ev.notes = notes.str();
  return ev;
}

}  // namespace kembed
