#include "kembed/seqspace.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "kembed/error.hpp"
#include "probe.hpp"

namespace kembed {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::yes_certified: return "YesCertified";
    case VerdictKind::no_certified: return "NoCertified";
    case VerdictKind::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ExampleVerdicts ExampleVerdicts::make(Verdict bounded, Verdict compact, Verdict hilbert_schmidt,
                                      Verdict kernel_in_l2, ProbeSummary probe) {
  require(!compact.is_yes() || bounded.is_yes(), Errc::invalid_argument,
          "verdicts: compact certified without bounded certified");
  require(!hilbert_schmidt.is_yes() || compact.is_yes(), Errc::invalid_argument,
          "verdicts: Hilbert-Schmidt certified without compact certified");
  require(!kernel_in_l2.is_yes() || compact.is_yes(), Errc::invalid_argument,
          "verdicts: kernel in L2 certified without compact certified");
  require(!hilbert_schmidt.is_yes() || kernel_in_l2.is_yes(), Errc::invalid_argument,
          "verdicts: Hilbert-Schmidt certified without kernel in L2 certified");
  for (const Verdict* v : {&bounded, &compact, &hilbert_schmidt, &kernel_in_l2})
    require(!v->certified() || !v->justification.empty(), Errc::invalid_argument,
            "verdicts: certified verdict without justification");
  ExampleVerdicts out;
  out.bounded_ = std::move(bounded);
  out.compact_ = std::move(compact);
  out.hilbert_schmidt_ = std::move(hilbert_schmidt);
  out.kernel_in_l2_ = std::move(kernel_in_l2);
  out.probe_ = probe;
  return out;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Certifies `target` as `kind` by implication; a certified opposite verdict
// means the annotations contradict each other.
bool imply(Verdict& target, VerdictKind kind, const std::string& reason, const char* name) {
  if (target.kind == kind) return false;
  if (target.certified())
    fail(Errc::annotation_conflict,
         std::string("annotations contradict each other on '") + name + "': " + reason);
  target = Verdict{kind, "implied: " + reason, target.evidence};
  return true;
}

}  // namespace

ExampleVerdicts verdicts(const SequencePair& pair, std::size_t horizon) {
  require(horizon >= 10, Errc::invalid_argument, "verdicts: horizon must be at least 10");
  require(static_cast<bool>(pair.mu) && static_cast<bool>(pair.nu), Errc::invalid_argument,
          "verdicts: missing mu or nu generator");
  const SequenceAnnotations& ann = pair.annotations;

  ProbeSummary probe;
  probe.horizon = horizon;
  for (std::size_t i = 1; i <= horizon; ++i) {
    const double mu = pair.mu(i);
    const double nu = pair.nu(i);
    require(std::isfinite(mu) && mu > 0.0, Errc::invalid_argument,
            "verdicts: mu_" + std::to_string(i) + " = " + fmt(mu) + " is not positive");
    require(std::isfinite(nu) && nu > 0.0, Errc::invalid_argument,
            "verdicts: nu_" + std::to_string(i) + " = " + fmt(nu) + " is not positive");
    const double r = mu / nu;
    if (i == 1) probe.first_ratio = r;
    probe.tail_ratio = r;
    probe.probed_sup = std::max(probe.probed_sup, r);
    probe.ratio_partial_sum += r;
    probe.ratio_sq_partial_sum += r * r;
  }

  if (ann.ratio_limit) {
    const double limit = *ann.ratio_limit;
    require(std::isfinite(limit) && limit >= 0.0, Errc::annotation_conflict,
            "ratio_limit must be a finite nonnegative number (ratios are positive)");
    detail::check_declared_limit(probe.first_ratio, probe.tail_ratio, horizon, limit,
                                 "ratio_limit: mu_i/nu_i");
    require(ann.ratio_sup_finite.value_or(true), Errc::annotation_conflict,
            "ratio_sup_finite=false contradicts a finite ratio_limit");
  }

  const std::string sup_ev = "probed sup over i <= " + std::to_string(horizon) + " is " +
                             fmt(probe.probed_sup);
  const std::string tail_ev = "ratio at i=1 is " + fmt(probe.first_ratio) + ", at i=" +
                              std::to_string(horizon) + " is " + fmt(probe.tail_ratio);

  Verdict bounded = Verdict::inconclusive(sup_ev);
  if (ann.ratio_sup_finite == true)
    bounded = Verdict::yes("S bounded iff sup mu_i/nu_i < inf; sup declared finite");
  else if (ann.ratio_sup_finite == false)
    bounded = Verdict::no("S bounded iff sup mu_i/nu_i < inf; sup declared infinite");
  else if (ann.ratio_limit)
    bounded = Verdict::yes("S bounded iff sup mu_i/nu_i < inf; a convergent ratio (limit " +
                           fmt(*ann.ratio_limit) + ") is bounded");
  bounded.evidence = sup_ev;

  Verdict compact = Verdict::inconclusive(tail_ev);
  if (ann.ratio_limit && *ann.ratio_limit == 0.0)
    compact = Verdict::yes("S compact iff mu_i/nu_i -> 0; limit 0 declared");
  else if (ann.ratio_limit)
    compact = Verdict::no("S compact iff mu_i/nu_i -> 0; declared limit " +
                          fmt(*ann.ratio_limit) + " > 0");
  compact.evidence = tail_ev;

  auto sum_verdict = [&](const std::optional<Justified>& decl, double partial, const char* series,
                         const char* property) {
    const std::string ev = std::string("partial sum of ") + series + " up to " +
                           std::to_string(horizon) + " is " + fmt(partial);
    Verdict v = Verdict::inconclusive(ev);
    if (decl) {
      require(!decl->justification.empty(), Errc::annotation_conflict,
              std::string("annotation on ") + series + " needs a justification tag");
      if (decl->value)
        v = Verdict::no(std::string(property) + " iff " + series + " < inf; diverges by " +
                        decl->justification);
      else
        v = Verdict::yes(std::string(property) + " iff " + series + " < inf; summable by " +
                         decl->justification);
    } else if (ann.ratio_limit && *ann.ratio_limit > 0.0) {
      v = Verdict::no(std::string(property) + " iff " + series +
                      " < inf; terms tend to a positive limit");
    }
    v.evidence = ev;
    return v;
  };
  Verdict hs = sum_verdict(ann.ratio_sum_divergent, probe.ratio_partial_sum, "sum mu_i/nu_i",
                           "S Hilbert-Schmidt");
  Verdict l2 = sum_verdict(ann.ratio_sq_sum_divergent, probe.ratio_sq_partial_sum,
                           "sum (mu_i/nu_i)^2", "k in L2(mu x mu)");

  for (bool changed = true; changed;) {
    changed = false;
    if (hs.is_yes()) {
      changed |= imply(l2, VerdictKind::yes_certified, "Hilbert-Schmidt implies k in L2", "kernel_in_l2");
      changed |= imply(compact, VerdictKind::yes_certified, "Hilbert-Schmidt implies compact", "compact");
    }
    if (l2.is_yes())
      changed |= imply(compact, VerdictKind::yes_certified, "k in L2 implies compact", "compact");
    if (compact.is_yes())
      changed |= imply(bounded, VerdictKind::yes_certified, "compact implies bounded", "bounded");
    if (bounded.is_no())
      changed |= imply(compact, VerdictKind::no_certified, "unbounded implies not compact", "compact");
    if (compact.is_no()) {
      changed |= imply(l2, VerdictKind::no_certified, "not compact implies k not in L2", "kernel_in_l2");
      changed |= imply(hs, VerdictKind::no_certified, "not compact implies not Hilbert-Schmidt", "hilbert_schmidt");
    }
    if (l2.is_no())
      changed |= imply(hs, VerdictKind::no_certified, "k not in L2 implies not Hilbert-Schmidt", "hilbert_schmidt");
  }

  return ExampleVerdicts::make(std::move(bounded), std::move(compact), std::move(hs),
                               std::move(l2), probe);
}

SequencePair log_example() {
  SequencePair p;
  p.mu = Sequence{[](std::uint64_t i) {
                    const double x = static_cast<double>(i);
                    return 1.0 / (x * x);
                  },
                  "1/i^2"};
  p.nu = Sequence{[](std::uint64_t i) {
                    const double x = static_cast<double>(i);
                    return std::log(x + 1.0) / (x * x);
                  },
                  "log(i+1)/i^2"};
  p.annotations.ratio_limit = 0.0;
  p.annotations.ratio_sup_finite = true;
  p.annotations.ratio_sum_divergent =
      Justified{true, "comparison with the harmonic series: 1/log(i+1) >= 1/i since log(i+1) <= i"};
  p.annotations.ratio_sq_sum_divergent =
      Justified{true,
                "comparison with the harmonic series: 1/log(i+1)^2 >= 1/i since log(i+1)^2 <= i "
                "for all i >= 1"};
  return p;
}

SequencePair equal_pair(Sequence base) {
  SequencePair p;
  p.mu = base;
  p.nu = std::move(base);
  p.annotations.ratio_limit = 1.0;
  p.annotations.ratio_sup_finite = true;
  return p;
}

}  // namespace kembed
