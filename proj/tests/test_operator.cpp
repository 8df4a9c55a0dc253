#include <doctest.h>

#include <cmath>
#include <random>

#include "kembed/error.hpp"
#include "kembed/integral_operator.hpp"
#include "oracles.hpp"

using namespace kembed;

namespace {

EmbeddingModel two_atom() {
  return EmbeddingModel(min_kernel(), atomic_measure({0.25, 0.75}, {0.5, 0.5}, Domain::interval(0, 1)));
}

EmbeddingModel diagonal(const char* mu, const char* nu, std::size_t n) {
  return EmbeddingModel(diagonal_sequence_kernel(expr::sequence(nu)),
                        sequence_measure(expr::sequence(mu), n));
}

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("l2_matrix") {
    const auto a = l2_matrix(two_atom());
    CHECK(a(0, 0) == doctest::Approx(0.125));
    CHECK(a(0, 1) == doctest::Approx(0.125));
    CHECK(a(1, 1) == doctest::Approx(0.375));

    const auto d = l2_matrix(diagonal("1/i^2", "log(i+1)/i^2", 5));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(d(i, j) == doctest::Approx(i == j ? 1.0 / std::log(i + 2.0) : 0.0).epsilon(1e-14));

    const EmbeddingModel single(gaussian_kernel(1.0), atomic_measure({0.3}, {0.7}, Domain::real_line()));
    CHECK(l2_matrix(single)(0, 0) == doctest::Approx(0.7));
  }

  TEST_CASE("domain mismatch is rejected") {
    CHECK_THROWS_AS(EmbeddingModel(min_kernel(), uniform_grid_measure(0, 2, 4)), Error);
    CHECK_THROWS_AS(EmbeddingModel(min_kernel(), sequence_measure(expr::sequence("1"), 3)), Error);
  }

  TEST_CASE("spectrum of the two-atom model") {
    const auto r = spectrum(two_atom(), 2);
    // lambda^2 - 0.5 lambda + 0.03125 = 0
    CHECK(r.singular_values[0] == doctest::Approx(std::sqrt((0.5 + std::sqrt(0.125)) / 2)).epsilon(1e-14));
    CHECK(r.singular_values[1] == doctest::Approx(std::sqrt((0.5 - std::sqrt(0.125)) / 2)).epsilon(1e-14));
    CHECK(r.operator_norm == r.singular_values[0]);
    CHECK(r.hs_trace == doctest::Approx(0.5));
    CHECK(r.kernel_l2_sq == doctest::Approx(0.1875));
    CHECK(r.atoms_count == 2);
    CHECK_FALSE(r.truncated_at.has_value());
    CHECK_THROWS_AS(spectrum(two_atom(), 3), Error);
  }

  TEST_CASE("diagonal spectra") {
    const auto eq = spectrum(diagonal("1/i^2", "1/i^2", 10), 10);
    for (double s : eq.singular_values) CHECK(s == doctest::Approx(1.0));
    CHECK(eq.truncated_at == 10u);

    const auto m = atomic_measure({1, 2, 3}, {0.2, 0.5, 0.3}, Domain::naturals());
    const auto id = spectrum(EmbeddingModel(diagonal_sequence_kernel(expr::sequence("1")), m), 3);
    CHECK(id.singular_values[0] == doctest::Approx(std::sqrt(0.5)));
    CHECK(id.singular_values[1] == doctest::Approx(std::sqrt(0.3)));
    CHECK(id.singular_values[2] == doctest::Approx(std::sqrt(0.2)));
  }

  TEST_CASE("spectrum matches a Jacobi oracle on random models") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + trial % 9;
      std::vector<double> atoms, weights;
      for (std::size_t i = 0; i < n; ++i) {
        atoms.push_back((i + unit(rng) * 0.9) / n);
        weights.push_back(unit(rng) + 0.01);
      }
      const Kernel k = trial % 2 ? min_kernel() : gaussian_kernel(0.2 + unit(rng));
      const EmbeddingModel model(k, atomic_measure(atoms, weights, Domain::interval(0, 1)));
      std::vector<double> a(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          a[i * n + j] = std::sqrt(weights[i]) * k(atoms[i], atoms[j]) * std::sqrt(weights[j]);
      const auto expect = oracle::jacobi_eigenvalues(a, n);
      const auto got = spectrum(model, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(got.raw_eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-10).scale(expect[0]));
    }
  }

  TEST_CASE("min kernel grid approaches the analytic spectrum") {
    const auto r = spectrum(EmbeddingModel(min_kernel(), uniform_grid_measure(0, 1, 512)), 5);
    for (int j = 1; j <= 5; ++j) {
      const double exact = 1.0 / ((j - 0.5) * M_PI);
      CHECK(r.singular_values[j - 1] == doctest::Approx(exact).epsilon(1e-4));
    }
  }

  TEST_CASE("hs_trace and kernel_l2_norm_sq") {
    CHECK(hs_trace(two_atom()) == 0.5);
    const auto d = diagonal("1/i^2", "log(i+1)/i^2", 50);
    double s = 0, s2 = 0;
    for (int i = 1; i <= 50; ++i) {
      s += 1.0 / std::log(i + 1.0);
      s2 += 1.0 / (std::log(i + 1.0) * std::log(i + 1.0));
    }
    CHECK(hs_trace(d) == doctest::Approx(s).epsilon(1e-13));
    CHECK(kernel_l2_norm_sq(d) == doctest::Approx(s2).epsilon(1e-13));
    const EmbeddingModel z(zero_kernel(), uniform_grid_measure(0, 1, 8));
    CHECK(hs_trace(z) == 0.0);
    CHECK(kernel_l2_norm_sq(z) == 0.0);
    CHECK(kernel_l2_norm_sq(two_atom()) == doctest::Approx(0.1875));
  }

  TEST_CASE("apply_T") {
    const auto m = two_atom();
    const std::vector<double> zero(2, 0.0);
    CHECK(apply_T(m, zero) == zero);
    const std::vector<double> e1{0.0, 1.0};
    const auto col = apply_T(m, e1);
    CHECK(col[0] == doctest::Approx(0.5 * 0.25));
    CHECK(col[1] == doctest::Approx(0.5 * 0.75));

    const auto d = diagonal("1/i^2", "log(i+1)/i^2", 6);
    std::vector<double> ind(6, 0.0);
    ind[2] = 1.0;
    const auto out = apply_T(d, ind);
    for (int i = 0; i < 6; ++i)
      CHECK(out[i] == doctest::Approx(i == 2 ? 1.0 / std::log(4.0) : 0.0).epsilon(1e-14));
    CHECK_THROWS_AS(apply_T(m, std::vector<double>(3, 1.0)), Error);
  }

  TEST_CASE("t3_functional") {
    const auto d = diagonal("1/i^2", "log(i+1)/i^2", 6);
    CHECK(t3_functional(d, std::vector<double>(6, 0.0)) == 0.0);
    for (int i = 1; i <= 6; ++i) {
      const double mu = 1.0 / (i * i), nu = std::log(i + 1.0) / (i * i);
      std::vector<double> f(6, 0.0);
      f[i - 1] = 1.0 / std::sqrt(nu);
      CHECK(t3_functional(d, f) == doctest::Approx(std::pow(mu / nu, 3)).epsilon(1e-13));
    }
  }
}
