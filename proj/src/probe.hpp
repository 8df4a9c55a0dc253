#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "kembed/error.hpp"

namespace kembed::detail {

// Non-rigorous sanity gate for a declared limit: the deviation at the
// horizon must have shrunk to at most half the initial deviation.
inline void check_declared_limit(double first, double at_horizon, std::size_t horizon,
                                 double limit, const std::string& what) {
  const double d0 = std::fabs(first - limit);
  const double dh = std::fabs(at_horizon - limit);
  const double slack = 1e-12 * std::max(1.0, std::fabs(limit));
  if (dh > std::max(0.5 * d0, slack))
    fail(Errc::annotation_conflict,
         what + " limit " + std::to_string(limit) + " contradicted at index " +
             std::to_string(horizon) + ": deviation " + std::to_string(dh) +
             " did not fall below half the initial deviation " + std::to_string(d0));
}

}  // namespace kembed::detail
