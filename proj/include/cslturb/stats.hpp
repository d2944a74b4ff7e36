#ifndef CSLTURB_STATS_HPP
#define CSLTURB_STATS_HPP

#include <cstddef>
#include <span>

namespace cslturb {

// Fixed-order pairwise summation. The reduction tree depends only on the
// element count, so parallel producers that fill the array in any schedule
// still reduce to bit-identical totals.
double pairwise_sum(std::span<const double> values);

// Bivariate sample moments with standard errors, computed in two passes
// (means first, then central sums) with pairwise reductions. Values that
// need at least two samples are NaN when n < 2.
struct BivariateMoments {
  std::size_t n = 0;
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;   // unbiased (n-1)
  double cov = 0;
  double se_mean_x = 0, se_mean_y = 0;
  double se_var_x = 0, se_var_y = 0;  // moment-based, uses 4th central moments
  double se_cov = 0;
};
BivariateMoments bivariate_moments(std::span<const double> x, std::span<const double> y);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
  std::size_t n = 0;
};
// Ordinary least squares with residual-based slope error (needs n >= 3 for
// the error, n >= 2 for the slope).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Upper quantiles of the chi-square distribution (Wilson-Hilferty
// approximation; relative error < 1e-3 for dof >= 3).
double chi_square_quantile(double p, double dof);

}  // namespace cslturb

#endif
