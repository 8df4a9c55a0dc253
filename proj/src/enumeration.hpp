#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kembed/ivar.hpp"

namespace kembed::detail {

using ValueFn = std::function<double(const Subset&, std::span<const std::uint32_t>)>;

/// Product structure value(u, a) = prod_{j in u} factor_j * lambda_{a_j},
/// with factor nonincreasing and factor_j * lambda_1 < 1 outside `large`.
struct ProductSearch {
  std::function<double(std::uint32_t)> factor;
  std::vector<std::uint32_t> large;  // sorted, finite
  std::size_t eigen_count = 1;       // r
  ValueFn value;                     // canonical value, used for ordering and output
};

std::vector<TensorEntry> top_products(const ProductSearch& search, std::size_t n);

std::vector<TensorEntry> top_explicit(const std::vector<std::pair<Subset, double>>& entries,
                                      std::size_t eigen_count, const ValueFn& value,
                                      std::size_t n);

inline constexpr std::size_t kMaxRoots = 1'000'000;

}  // namespace kembed::detail
