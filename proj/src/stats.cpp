#include "cslturb/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cslturb {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

BivariateMoments bivariate_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("bivariate_moments: size mismatch");
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("bivariate_moments: empty input");

  BivariateMoments m;
  m.n = n;
  const double dn = static_cast<double>(n);
  m.mean_x = pairwise_sum(x) / dn;
  m.mean_y = pairwise_sum(y) / dn;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (n < 2) {
    m.var_x = m.var_y = m.cov = nan;
    m.se_mean_x = m.se_mean_y = m.se_var_x = m.se_var_y = m.se_cov = nan;
    return m;
  }

  std::vector<double> dxx(n), dyy(n), dxy(n), dx4(n), dy4(n), dxxyy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - m.mean_x;
    const double dy = y[i] - m.mean_y;
    dxx[i] = dx * dx;
    dyy[i] = dy * dy;
    dxy[i] = dx * dy;
    dx4[i] = dx * dx * dx * dx;
    dy4[i] = dy * dy * dy * dy;
    dxxyy[i] = dx * dx * dy * dy;
  }
  const double sxx = pairwise_sum(dxx);
  const double syy = pairwise_sum(dyy);
  const double sxy = pairwise_sum(dxy);
  m.var_x = sxx / (dn - 1.0);
  m.var_y = syy / (dn - 1.0);
  m.cov = sxy / (dn - 1.0);

  m.se_mean_x = std::sqrt(m.var_x / dn);
  m.se_mean_y = std::sqrt(m.var_y / dn);

  // Var[s^2] = (m4 - s^4 (n-3)/(n-1)) / n with m4 the 4th central moment.
  const double m4x = pairwise_sum(dx4) / dn;
  const double m4y = pairwise_sum(dy4) / dn;
  const double m22 = pairwise_sum(dxxyy) / dn;
  const double corr = (dn - 3.0) / (dn - 1.0);
  m.se_var_x = std::sqrt(std::max(0.0, m4x - corr * m.var_x * m.var_x) / dn);
  m.se_var_y = std::sqrt(std::max(0.0, m4y - corr * m.var_y * m.var_y) / dn);
  m.se_cov = std::sqrt(std::max(0.0, m22 - m.cov * m.cov) / dn);
  return m;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");

  LineFit f;
  f.n = n;
  const double dn = static_cast<double>(n);
  const double xm = pairwise_sum(x) / dn;
  const double ym = pairwise_sum(y) / dn;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  if (n >= 3) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      ssr += r * r;
    }
    f.slope_stderr = std::sqrt(ssr / (dn - 2.0) / sxx);
  } else {
    f.slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return f;
}

double chi_square_quantile(double p, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("chi_square_quantile: dof must be positive");
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("chi_square_quantile: p in (0,1)");
  // Inverse standard-normal via Acklam's rational approximation.
  auto norm_inv = [](double q) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (q < plow) {
      const double u = std::sqrt(-2 * std::log(q));
      x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
          ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
    } else if (q <= phigh) {
      const double u = q - 0.5, r = u * u;
      x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
          (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
      const double u = std::sqrt(-2 * std::log(1 - q));
      x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
          ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
    }
    return x;
  };
  const double z = norm_inv(p);
  const double h = 2.0 / (9.0 * dof);
  const double w = 1.0 - h + z * std::sqrt(h);
  return dof * w * w * w;
}

}  // namespace cslturb
