#include "crier/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crier/error.hpp"

namespace crier::stats {

namespace {

// Continued fraction for I_x(a, b) (modified Lentz). Converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InvalidArgument("incomplete beta needs positive shape parameters");
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidArgument("incomplete beta argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t < 0.0 ? tail : 1.0 - tail;
}

RegressionResult regress(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) throw InvalidArgument("regression needs at least two points");

  RegressionResult r;
  r.n_points = n;
  const double count = static_cast<double>(n);
  // x = 0..n-1: mean and centered sum of squares are exact.
  const double x_mean = 0.5 * (count - 1.0);
  const double sxx = count * (count * count - 1.0) / 12.0;

  double y_mean = 0.0;
  for (double y : series) y_mean += y;
  y_mean /= count;

  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    const double dy = series[i] - y_mean;
    sxy += dx * dy;
    syy += dy * dy;
  }
  r.slope = sxy / sxx;
  r.intercept = y_mean - r.slope * x_mean;

  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double residual =
        series[i] - (r.intercept + r.slope * static_cast<double>(i));
    sse += residual * residual;
  }

  // Residuals at rounding level relative to the spread count as an exact fit.
  const bool perfect_fit = n == 2 || sse <= syy * 1e-20 ||
                           sse <= std::numeric_limits<double>::min();
  if (perfect_fit) {
    r.stderr_slope = 0.0;
    r.t_defined = false;
    r.p_value = r.slope != 0.0 ? 0.0 : 1.0;
    return r;
  }

  const double df = count - 2.0;
  r.stderr_slope = std::sqrt(sse / df / sxx);
  r.t_stat = r.slope / r.stderr_slope;
  r.t_defined = true;
  r.p_value = student_t_two_sided_p(r.t_stat, df);
  return r;
}

}  // namespace crier::stats
