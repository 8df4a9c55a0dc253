#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "kembed/error.hpp"
#include "kembed/ivar.hpp"
#include "oracles.hpp"

using namespace kembed;

namespace {

EmbeddingModel uni() { return EmbeddingModel(min_kernel(), uniform_grid_measure(0, 1, 16)); }

IvarModel model(WeightSchema s, std::optional<double> c2 = 1.0) {
  return IvarModel(uni(), std::move(s), c2);
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::config;
}

WeightSchema inverse_j_divergent() {
  ProductAnnotations a;
  a.gamma_limit = 0.0;
  a.nonincreasing = true;
  a.gamma_summable = Justified{false, "harmonic series"};
  return WeightSchema::product(expr::sequence("1/j", "j"), a);
}

std::vector<oracle::Ranked> brute_criterion(const IvarModel& m, std::uint32_t n) {
  std::vector<oracle::Ranked> all;
  for (const auto& u : oracle::subsets(n)) {
    double w = 1.0;
    for (auto j : u) w *= m.schema().gamma(j);
    all.push_back({u, {}, w * std::pow(m.norm_sq(), static_cast<double>(u.size()))});
  }
  oracle::canonical_sort(all);
  return all;
}

}  // namespace

TEST_SUITE("ivar") {
  TEST_CASE("weight_of") {
    CHECK(weight_of(WeightSchema::pow2(), Subset{1, 2}) == 0.125);
    CHECK(weight_of(WeightSchema::pow2(), Subset{}) == 1.0);
    const auto ex = WeightSchema::explicit_list({{Subset{1}, 0.3}});
    CHECK(weight_of(ex, Subset{2}) == 0.0);
    CHECK(weight_of(ex, Subset{}) == 0.0);
    CHECK(weight_of(ex, Subset{1}) == 0.3);
  }

  TEST_CASE("explicit schema validation") {
    CHECK(code_of([] { WeightSchema::explicit_list({{Subset{1}, 0.3}, {Subset{1}, 0.2}}); }) ==
          Errc::invalid_argument);
    CHECK(code_of([] { WeightSchema::explicit_list({{Subset{1}, 0.0}}); }) == Errc::invalid_argument);
    CHECK(code_of([] { WeightSchema::geometric(1.0); }) == Errc::invalid_argument);
  }

  TEST_CASE("criterion values and component norms") {
    const auto m = model(WeightSchema::pow2(), 0.5);
    CHECK(criterion_value(m, Subset{1, 2}) == doctest::Approx(1.0 / 32));
    CHECK(criterion_value(m, Subset{}) == 1.0);
    const auto c = model(WeightSchema::constant(1.0), 1.0);
    CHECK(criterion_value(c, Subset{2, 7, 9}) == 1.0);

    const auto q = model(WeightSchema::explicit_list({{Subset{1}, 0.25}}), 0.25);
    CHECK(component_embedding_norm(q, Subset{1}) == doctest::Approx(0.25));
    CHECK(component_embedding_norm(m, Subset{}) == 1.0);
  }

  TEST_CASE("model construction") {
    const IvarModel m(uni(), WeightSchema::pow2());
    CHECK(m.norm_level() == 16u);
    CHECK(m.norm_sq() == doctest::Approx(0.405).epsilon(2e-2));
    CHECK(code_of([] {
            IvarModel(EmbeddingModel(min_kernel(), atomic_measure({0.5}, {0.5}, Domain::interval(0, 1))),
                      WeightSchema::pow2());
          }) == Errc::invalid_argument);
    CHECK(code_of([] {
            IvarModel(EmbeddingModel(constant_plus_kernel(min_kernel()), uniform_grid_measure(0, 1, 4)),
                      WeightSchema::pow2());
          }) == Errc::invalid_argument);
  }

  TEST_CASE("enumeration examples") {
    const auto e = enumerate_by_criterion(model(WeightSchema::pow2()), 5);
    REQUIRE(e.size() == 5);
    const Subset expect_u[] = {Subset{}, Subset{1}, Subset{2}, Subset{3}, Subset{1, 2}};
    const double expect_v[] = {1.0, 0.5, 0.25, 0.125, 0.125};
    for (int i = 0; i < 5; ++i) {
      CHECK(e[i].u == expect_u[i]);
      CHECK(e[i].value == expect_v[i]);
    }

    const auto ex = enumerate_by_criterion(
        model(WeightSchema::explicit_list({{Subset{1}, 0.3}, {Subset{2, 5}, 0.9}})), 2);
    CHECK(ex[0].u == Subset{2, 5});
    CHECK(ex[1].u == Subset{1});
  }

  TEST_CASE("enumeration with a factor above one") {
    CHECK(code_of([] { enumerate_by_criterion(model(WeightSchema::inverse_square(), 2.0), 1); }) ==
          Errc::not_enumerable);
    ProductAnnotations a = WeightSchema::inverse_square().product_weights().annotations;
    a.large_indices = std::vector<std::uint32_t>{1};
    const auto m = model(WeightSchema::product(expr::sequence("1/j^2", "j"), a), 2.0);
    const auto top = enumerate_by_criterion(m, 1);
    CHECK(top[0].u == Subset{1});
    CHECK(top[0].value == 2.0);
    // Any subset reaching past 14 is worth at most c_15 * c_1.
    const auto brute = brute_criterion(m, 14);
    const double bound = 2.0 / 225.0 * 2.0;
    std::size_t safe = 0;
    while (brute[safe].value > bound) ++safe;
    const auto many = enumerate_by_criterion(m, safe);
    REQUIRE(many.size() == safe);
    for (std::size_t i = 0; i < many.size(); ++i) {
      CHECK(many[i].u.elements().size() == brute[i].u.size());
      CHECK(std::equal(brute[i].u.begin(), brute[i].u.end(), many[i].u.elements().begin()));
    }

    ProductAnnotations wrong = a;
    wrong.large_indices = std::vector<std::uint32_t>{2};
    CHECK(code_of([&] { enumerate_by_criterion(model(WeightSchema::product(expr::sequence("1/j^2", "j"), wrong), 2.0), 1); }) ==
          Errc::annotation_conflict);
  }

  TEST_CASE("enumeration needs declared monotonicity") {
    CHECK(code_of([] { enumerate_by_criterion(model(WeightSchema::product(expr::sequence("2^-j", "j"))), 3); }) ==
          Errc::not_enumerable);
    ProductAnnotations lie;
    lie.nonincreasing = true;
    CHECK(code_of([&] { enumerate_by_criterion(model(WeightSchema::product(expr::sequence("j/(j+1)/4", "j"), lie)), 3); }) ==
          Errc::annotation_conflict);
  }

  TEST_CASE("enumeration agrees with brute force, ties included") {
    for (double q : {0.5, 0.25, 0.125}) {
      const auto m = model(WeightSchema::geometric(q));
      const auto got = enumerate_by_criterion(m, 60);
      const auto brute = brute_criterion(m, 14);
      for (std::size_t i = 0; i < got.size(); ++i) {
        CAPTURE(i);
        CHECK(got[i].value == brute[i].value);
        CHECK(std::vector<std::uint32_t>(got[i].u.elements().begin(), got[i].u.elements().end()) == brute[i].u);
      }
    }
  }

  TEST_CASE("verdicts") {
    const auto c = thm2_verdict(model(WeightSchema::inverse_square(), 0.5));
    CHECK(c.verdict == CompactnessKind::compact_certified);
    CHECK(c.justification.find("0 < C < inf") != std::string::npos);

    const auto nc = thm2_verdict(model(WeightSchema::constant(1.0), 1.0));
    CHECK(nc.verdict == CompactnessKind::non_compact_certified);
    CHECK_FALSE(nc.witness.empty());

    const auto ex = thm2_verdict(model(WeightSchema::explicit_list({{Subset{3}, 7.0}})));
    CHECK(ex.verdict == CompactnessKind::compact_certified);

    const auto inc = thm2_verdict(model(WeightSchema::product(expr::sequence("1/j", "j"))));
    CHECK(inc.verdict == CompactnessKind::inconclusive);
    REQUIRE(inc.decay_table.size() == 5);
    CHECK(inc.decay_table[1].first == 10u);
    CHECK(inc.decay_table[1].second == doctest::Approx(0.1));

    ProductAnnotations lie;
    lie.gamma_limit = 0.5;
    CHECK(code_of([&] { thm2_verdict(model(WeightSchema::product(expr::sequence("1/j", "j"), lie))); }) ==
          Errc::annotation_conflict);

    const auto measured = thm2_verdict(IvarModel(uni(), WeightSchema::pow2()));
    CHECK(measured.justification.find("16 atoms") != std::string::npos);
  }

  TEST_CASE("compact certificates leave finitely many large criterion values") {
    const auto m = model(WeightSchema::inverse_square(), 0.5);
    const auto brute = brute_criterion(m, 12);
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      std::vector<CriterionEntry> top;
      for (std::size_t n = 64;; n *= 2) {
        top = enumerate_by_criterion(m, n);
        if (top.back().value < eps) break;
        REQUIRE(n < 1'000'000);
      }
      std::set<std::vector<std::uint32_t>> prefix;
      for (const auto& e : top)
        if (e.value >= eps) prefix.insert({e.u.elements().begin(), e.u.elements().end()});
      for (const auto& b : brute)
        if (b.value >= eps) CHECK(prefix.count(b.u) == 1);
    }
  }

  TEST_CASE("kgamma") {
    const auto m = model(WeightSchema::pow2());
    const double half[] = {0.5, 0.5};
    const auto v = kgamma_eval(m, half, half, 2);
    CHECK(v.value == doctest::Approx(1.40625).epsilon(1e-15));
    CHECK(v.value == doctest::Approx(1 + 0.25 + 0.125 + 0.03125));
    REQUIRE(v.tail_bound.has_value());
    CHECK(*v.tail_bound == doctest::Approx(1.40625 * std::expm1(0.25)));

    const std::vector<double> zero(12, 0.0);
    for (std::size_t J = 0; J <= 12; ++J) CHECK(kgamma_eval(m, zero, zero, J).value == 1.0);

    const auto ex = model(WeightSchema::explicit_list({{Subset{1}, 0.5}}));
    const double ones[] = {1.0, 1.0};
    const auto e = kgamma_eval(ex, ones, ones, 2);
    CHECK(e.value == 0.5);
    CHECK(e.tail_bound == 0.0);

    CHECK(code_of([&] { kgamma_eval(m, half, half, 3); }) == Errc::invalid_argument);
    const double bad[] = {2.0, 0.5};
    CHECK(code_of([&] { kgamma_eval(m, bad, half, 2); }) == Errc::invalid_argument);
    CHECK_FALSE(kgamma_eval(model(WeightSchema::constant(1.0)), half, half, 2).tail_bound.has_value());
  }

  TEST_CASE("kgamma product form equals the subset sum") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto m = model(WeightSchema::inverse_square());
    for (int t = 0; t < 10; ++t) {
      std::vector<double> x(10), y(10);
      for (auto& v : x) v = unit(rng);
      for (auto& v : y) v = unit(rng);
      const double brute = oracle::kgamma_subset_sum(
          [](std::uint32_t j) { return 1.0 / (double(j) * j); },
          [](double s, double u) { return std::min(s, u); }, x, y, 10);
      CHECK(kgamma_eval(m, x, y, 10).value == doctest::Approx(brute).epsilon(1e-12));
    }
  }

  TEST_CASE("x membership") {
    PointSequence origin{{}, 0.0, std::nullopt, std::nullopt};
    CHECK(x_membership(model(WeightSchema::constant(1.0)), origin).is_yes());

    PointSequence ones{{1.0, 1.0}, 1.0, std::nullopt, std::nullopt};
    CHECK(x_membership(model(inverse_j_divergent()), ones).is_no());
    CHECK(x_membership(model(WeightSchema::pow2()), PointSequence{{0.3, 0.9}, std::nullopt, std::nullopt, std::nullopt}).is_yes());
    CHECK(x_membership(model(WeightSchema::explicit_list({{Subset{1}, 1.0}})), ones).is_yes());

    PointSequence unknown{{0.5}, std::nullopt, std::nullopt, std::nullopt};
    CHECK_FALSE(x_membership(model(inverse_j_divergent()), unknown).certified());
  }

  TEST_CASE("hgamma norm") {
    CHECK(hgamma_norm_sq(model(WeightSchema::explicit_list({{Subset{1}, 0.25}})), {{Subset{1}, 1.0}}) == 4.0);
    CHECK(hgamma_norm_sq(model(WeightSchema::pow2()), {}) == 0.0);
    CHECK(hgamma_norm_sq(model(WeightSchema::constant(1.0)), {{Subset{1}, 1.0}, {Subset{2}, 2.0}}) == 5.0);
    CHECK(code_of([] { hgamma_norm_sq(model(WeightSchema::explicit_list({{Subset{1}, 0.25}})), {{Subset{2}, 1.0}}); }) ==
          Errc::invalid_argument);
    CHECK(code_of([] { hgamma_norm_sq(model(WeightSchema::pow2()), {{Subset{1}, 1.0}, {Subset{1}, 1.0}}); }) ==
          Errc::invalid_argument);
  }

  TEST_CASE("tensor spectrum") {
    const double lambda[] = {0.4, 0.1};
    const auto m = model(WeightSchema::pow2());
    const auto v = tensor_spectrum_topn(m, lambda, 4, true);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(0.2));
    CHECK(v[2] == doctest::Approx(0.1));
    CHECK(v[3] == doctest::Approx(0.05));
    const auto entries = tensor_spectrum_entries(m, lambda, 4, true);
    CHECK(entries[3].u == Subset{1});
    CHECK(entries[3].eigen_indices == std::vector<std::uint32_t>{2});

    CHECK(tensor_spectrum_topn(model(WeightSchema::inverse_square()), lambda, 1, true) == std::vector<double>{1.0});
    const auto ex = tensor_spectrum_topn(model(WeightSchema::explicit_list({{Subset{1}, 1.0}})), lambda, 2, true);
    CHECK(ex == std::vector<double>{0.4, 0.1});

    CHECK(code_of([&] { tensor_spectrum_topn(m, lambda, 4, false); }) == Errc::refused);
    const double unsorted[] = {0.1, 0.4};
    CHECK(code_of([&] { tensor_spectrum_topn(m, unsorted, 4, true); }) == Errc::invalid_argument);
    const double nonpos[] = {0.4, 0.0};
    CHECK(code_of([&] { tensor_spectrum_topn(m, nonpos, 4, true); }) == Errc::invalid_argument);
  }
}
