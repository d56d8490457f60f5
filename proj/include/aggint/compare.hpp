#ifndef AGGINT_COMPARE_HPP_
#define AGGINT_COMPARE_HPP_

#include "aggint/inversion.hpp"

namespace aggint {

struct ComparisonMetrics {
  // max |f_a - f_b| / max(peak_a, peak_b) on the comparison grid.
  double sup_norm_of_peak = 0.0;
  // Kolmogorov-Smirnov distance of the two CDFs, each normalized by its own
  // mass on its grid.
  double ks_statistic = 0.0;
  // |m_a - m_b| / max(|m_a|, |m_b|), likewise for the variance.
  double mean_gap = 0.0;
  double variance_gap = 0.0;
};

// Densities are compared on the bins when exactly one side is binned (the
// continuous side is averaged over each bin), otherwise on a common uniform
// grid spanning both supports. Disjoint supports raise ValidationError.
ComparisonMetrics compare_distributions(const DistributionEstimate& a, const DistributionEstimate& b);

}  // namespace aggint

#endif  // AGGINT_COMPARE_HPP_
