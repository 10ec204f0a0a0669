#pragma once

// Coevolution-trajectory statistics over recorded series.

#include "logimap/return_map.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace logimap {

struct PairStats {
  double pearson = 0.0;
  double ahead_fraction = 0.0;
  std::int64_t best_lag = 0;
  double lag_correlation = 0.0;
};

/// Fraction of points (a, b) with some point within Chebyshev distance eps
/// of the mirror (b, a). Points on the bisector mirror themselves.
double bisector_symmetry(const ReturnMap& map, double eps);

/// Fraction of indices with x_n > y_n (strict; ties are not ahead).
double ahead_fraction(std::span<const double> x, std::span<const double> y);

/// Pearson product-moment coefficient. Throws DegenerateVarianceError when
/// either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct LagResult {
  std::int64_t lag = 0;
  double correlation = 0.0;
};

/// Lag in [−max_lag, max_lag] maximising |corr(x_n, y_{n+lag})| over the
/// overlapping samples. A positive lag means y follows x. Ties go to the
/// smaller |lag|. Requires size ≥ 4·max_lag.
LagResult synchrony_lag(std::span<const double> x, std::span<const double> y,
                        std::size_t max_lag);

/// Connected components (8-connectivity) of occupied cells of side `cell`
/// over [0, 1]².
std::size_t branch_count(const ReturnMap& map, double cell = 1.0 / 512.0);

PairStats pair_stats(std::span<const double> x, std::span<const double> y,
                     std::size_t max_lag);

} // namespace logimap
