// Independent reference computations for the tests. Nothing here calls the
// library's numerical routines; everything is brute force or closed form.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Elems = std::vector<std::uint32_t>;

/// Every subset of {1..n}, elements ascending.
inline std::vector<Elems> subsets(std::uint32_t n) {
  std::vector<Elems> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Elems u;
    for (std::uint32_t j = 1; j <= n; ++j)
      if (mask & (std::uint64_t{1} << (j - 1))) u.push_back(j);
    out.push_back(std::move(u));
  }
  return out;
}

struct Ranked {
  Elems u;
  Elems eig;
  double value;
};

/// Value descending, then |u| ascending, then lexicographic elements, then
/// lexicographic eigen-indices.
inline void canonical_sort(std::vector<Ranked>& v) {
  std::sort(v.begin(), v.end(), [](const Ranked& a, const Ranked& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.u.size() != b.u.size()) return a.u.size() < b.u.size();
    if (a.u != b.u) return std::lexicographical_compare(a.u.begin(), a.u.end(), b.u.begin(), b.u.end());
    return std::lexicographical_compare(a.eig.begin(), a.eig.end(), b.eig.begin(), b.eig.end());
  });
}

/// All eigen-index assignments in {1..r}^|u|.
inline std::vector<Elems> index_tuples(std::size_t len, std::uint32_t r) {
  std::vector<Elems> out{Elems{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Elems> next;
    for (const auto& t : out)
      for (std::uint32_t a = 1; a <= r; ++a) {
        Elems e = t;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations,
/// descending. Row-major n x n input.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

/// sum over u subset of {1..J} of prod_{j in u} gamma_j k(x_j, y_j).
inline double kgamma_subset_sum(const std::function<double(std::uint32_t)>& gamma,
                                const std::function<double(double, double)>& k,
                                const std::vector<double>& x, const std::vector<double>& y,
                                std::uint32_t J) {
  double sum = 0.0;
  for (const auto& u : subsets(J)) {
    double term = 1.0;
    for (auto j : u) term *= gamma(j) * k(x[j - 1], y[j - 1]);
    sum += term;
  }
  return sum;
}

}  // namespace oracle
