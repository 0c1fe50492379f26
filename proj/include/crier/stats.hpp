#pragma once

#include <cstddef>
#include <span>

namespace crier::stats {

/// Ordinary least squares fit of y = intercept + slope * x over x = 0..n-1,
/// with a two-sided t-test of the null hypothesis slope = 0.
struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  /// slope / stderr_slope; meaningless when `t_defined` is false.
  double t_stat = 0.0;
  bool t_defined = false;
  double p_value = 1.0;
  std::size_t n_points = 0;

  bool significant(double alpha) const noexcept { return p_value < alpha; }
};

/// Throws InvalidArgument for fewer than two points.
///
/// Perfect fits (zero residuals, including the two-point case) have no
/// finite t statistic: p is 0 when the slope is non-zero and 1 otherwise.
RegressionResult regress(std::span<const double> series);

/// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` > 0.
double student_t_two_sided_p(double t, double df);

/// Student's t cumulative distribution function.
double student_t_cdf(double t, double df);

}  // namespace crier::stats
