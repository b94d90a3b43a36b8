#pragma once

#include <span>
#include <utility>

namespace cardvote {

struct SlopeFit {
  double slope;
  double intercept;
  double residual;  ///< root-mean-square residual in log space
};

/// Least-squares line through (log m, log ratio). Needs >= 3 points with m
/// strictly increasing and every ratio > 0 (DataError otherwise).
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

}  // namespace cardvote
