#ifndef CSLTURB_BURGERS_HPP
#define CSLTURB_BURGERS_HPP

#include <Eigen/Core>

#include "cslturb/rng.hpp"

namespace cslturb {

// Periodic 1D field on [0, L): values[i] lives at x = i L / n.
struct Field1D {
  double L = 0;
  Eigen::ArrayXd values;
  int n() const { return static_cast<int>(values.size()); }
  double dx() const { return L / n(); }
  double x_at(int i) const { return i * dx(); }
  void validate() const;  // n >= 8 and even, values finite
};

Field1D make_field(double L, int n);

// Gaussian forcing of the random potential:
//   <phi(x,t) phi(x',t')> = epsilon Delta^2 N delta(t-t') exp(-(x-x')^2 / (2 N Delta^2)),
// with the spatial dimension N fixed to 1.
struct ForcingSpec {
  double epsilon = 0;  // injected energy rate, cm^2/s^3
  double Delta = 0;    // injection length, cm
  static constexpr int N_dim = 1;
  void validate(double L) const;  // epsilon >= 0, 0 < Delta < L/4
};

// Samples potential fields with the covariance above by circulant embedding
// on the periodic grid. Each per-step sample carries the 1/dt normalization
// that realizes delta(t-t').
class ForcingSampler {
 public:
  // Throws if the wrapped covariance spectrum has negative entries beyond
  // tolerance (grid too coarse for the requested Delta).
  ForcingSampler(const ForcingSpec& spec, double L, int n);
  Field1D sample(double dt, RngStream& rng) const;
  const Eigen::ArrayXd& spectrum() const { return lambda_; }

 private:
  double L_ = 0;
  int n_ = 0;
  Eigen::ArrayXd lambda_;       // circulant eigenvalues (clamped)
  Eigen::ArrayXd amplitude_;    // sqrt(lambda_k n)
};

Field1D sample_potential(const ForcingSpec& spec, double L, int n, double dt, RngStream& rng);

// f = sign * d(phi)/dx, spectral derivative. The default +1 follows the
// imaginary-time convention; -1 gives the conventional f = -grad(phi).
Field1D force_from_potential(const Field1D& phi, int sign = +1);

// One explicit step of v_t + d(v^2/2)/dx = nu v_xx + f, pseudo-spectral with
// 2/3 dealiasing of the advection product. Enforces max|v| dt/dx <= 0.5 and
// nu dt/dx^2 <= 0.25, rejecting the step otherwise.
Field1D step_burgers(const Field1D& v, double nu, const Field1D& f, double dt);

// One step of Z_t = nu Z_xx + (phi / 2 nu) Z: spectral diffusion followed by
// the exponential multiplicative update Z *= exp(phi dt / 2 nu), which keeps
// Z positive.
Field1D step_heat_multiplicative(const Field1D& Z, double nu, const Field1D& phi, double dt);

// v = -2 nu (dZ/dx) / Z.
Field1D hopf_cole(const Field1D& Z, double nu);

// h = 2 nu ln Z in the mean-zero gauge; -dh/dx equals hopf_cole(Z).
Field1D surface_from(const Field1D& Z, double nu);

// Spectral first derivative on the periodic domain (exposed for tests and
// diagnostics).
Field1D spectral_derivative(const Field1D& f);

}  // namespace cslturb

#endif
