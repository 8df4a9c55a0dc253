#include <doctest.h>

#include <cmath>

#include "kembed/error.hpp"
#include "kembed/seqspace.hpp"

using namespace kembed;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::config;
}

}  // namespace

TEST_SUITE("seqspace") {
  TEST_CASE("equal sequences give a bounded non-compact embedding") {
    const auto v = verdicts(equal_pair(expr::sequence("1/i^2")));
    CHECK(v.bounded().is_yes());
    CHECK(v.compact().is_no());
    CHECK(v.hilbert_schmidt().is_no());
    CHECK(v.kernel_in_l2().is_no());
    CHECK(v.probe().ratio_partial_sum == doctest::Approx(10000.0));
    CHECK(v.probe().ratio_sq_partial_sum == doctest::Approx(10000.0));
  }

  TEST_CASE("the logarithmic pair is compact without an L2 kernel") {
    const auto v = verdicts(log_example(), 10000);
    CHECK(v.bounded().is_yes());
    CHECK(v.compact().is_yes());
    CHECK(v.kernel_in_l2().is_no());
    CHECK(v.hilbert_schmidt().is_no());
    for (const Verdict* x : {&v.bounded(), &v.compact(), &v.kernel_in_l2(), &v.hilbert_schmidt()})
      CHECK_FALSE(x->justification.empty());
  }

  TEST_CASE("log_example data") {
    const auto p = log_example();
    CHECK(p.mu(1) / p.nu(1) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-15));
    CHECK(p.annotations.ratio_limit == 0.0);
  }

  TEST_CASE("missing annotations stay inconclusive") {
    SequencePair p{expr::sequence("1/i^2"), expr::sequence("1/i^3"), {}};
    const auto v = verdicts(p, 100);
    CHECK_FALSE(v.bounded().certified());
    CHECK_FALSE(v.compact().certified());
    CHECK(v.probe().tail_ratio == doctest::Approx(100.0));
    CHECK_FALSE(v.compact().evidence.empty());
  }

  TEST_CASE("summable annotations propagate upward") {
    SequencePair p{expr::sequence("1/i^4"), expr::sequence("1/i^2"), {}};
    p.annotations.ratio_sum_divergent = Justified{false, "p-series with p = 2"};
    const auto v = verdicts(p, 100);
    CHECK(v.hilbert_schmidt().is_yes());
    CHECK(v.kernel_in_l2().is_yes());
    CHECK(v.compact().is_yes());
    CHECK(v.bounded().is_yes());
  }

  TEST_CASE("contradicted annotations") {
    SequencePair wrong_limit = log_example();
    wrong_limit.annotations.ratio_limit = 1.0;
    CHECK(code_of([&] { verdicts(wrong_limit, 10000); }) == Errc::annotation_conflict);

    SequencePair clash = log_example();
    clash.annotations.ratio_sum_divergent = Justified{false, "claimed summable"};
    CHECK(code_of([&] { verdicts(clash, 100); }) == Errc::annotation_conflict);

    SequencePair untagged{expr::sequence("1"), expr::sequence("1"), {}};
    untagged.annotations.ratio_sum_divergent = Justified{true, ""};
    CHECK(code_of([&] { verdicts(untagged, 100); }) == Errc::annotation_conflict);
  }

  TEST_CASE("invalid inputs") {
    SequencePair neg{expr::sequence("1 - i"), expr::sequence("1"), {}};
    CHECK(code_of([&] { verdicts(neg, 100); }) == Errc::invalid_argument);
    CHECK(code_of([] { verdicts(log_example(), 5); }) == Errc::invalid_argument);
  }

  TEST_CASE("ExampleVerdicts enforces the implication chain") {
    CHECK(code_of([] {
            ExampleVerdicts::make(Verdict::no("x"), Verdict::yes("y"), Verdict::inconclusive(""),
                                  Verdict::inconclusive(""));
          }) == Errc::invalid_argument);
    CHECK(code_of([] {
            ExampleVerdicts::make(Verdict::yes("a"), Verdict::yes("b"), Verdict::yes("c"),
                                  Verdict::no("d"));
          }) == Errc::invalid_argument);
    CHECK(code_of([] {
            ExampleVerdicts::make(Verdict::yes(""), Verdict::inconclusive(""), Verdict::inconclusive(""),
                                  Verdict::inconclusive(""));
          }) == Errc::invalid_argument);
  }
}
