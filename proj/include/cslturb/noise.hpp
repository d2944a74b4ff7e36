#ifndef CSLTURB_NOISE_HPP
#define CSLTURB_NOISE_HPP

#include <Eigen/Core>
#include <cstdint>

#include "cslturb/params.hpp"
#include "cslturb/rng.hpp"

namespace cslturb {

// Gaussian localization kernel G(x-z) = sqrt(alpha/2pi) exp(-alpha (x-z)^2/2).
struct GaussianKernelSpec {
  double alpha = 0;
  void validate() const;
};

double kernel(const GaussianKernelSpec& spec, double x, double z);
// d/dx G(x-z) = -alpha (x-z) G(x-z); antisymmetric under x <-> z.
double kernel_gradient(const GaussianKernelSpec& spec, double x, double z);

// Spatial white noise accumulated in time on a uniform grid:
// B_j ~ integral_0^t w(z_j, t') dt', Var[B_j] = t_accum / dz, sites independent.
struct NoiseLattice {
  double z_min = 0;
  double z_max = 0;
  double dz = 0;
  Eigen::ArrayXd sites;  // accumulated B_j, units s^(1/2) cm^(-1/2)
  double t_accum = 0;
  std::uint64_t rng_stream = 0;

  // Window [x0 - 8/sqrt(alpha), x0 + 8/sqrt(alpha)], dz = (1/sqrt(alpha))/8.
  // Kernel mass outside the window is < 1e-8 of the total and the tracer
  // never leaves the central resolved region over simulated horizons.
  static NoiseLattice centered(double x0, double alpha);
  static NoiseLattice make(double z_min, double z_max, double dz);

  int n_sites() const { return static_cast<int>(sites.size()); }
  double z_at(int j) const { return z_min + j * dz; }
  double center() const { return 0.5 * (z_min + z_max); }
};

// Adds an independent centered Gaussian of variance dt/dz to every site and
// returns the increments (needed by the momentum update, which must consume
// the same realization). t_accum grows by dt.
Eigen::ArrayXd advance_field_collect(NoiseLattice& lattice, double dt, RngStream& rng);
void advance_field(NoiseLattice& lattice, double dt, RngStream& rng);

// Nonlocal CSL velocity at x:
//   v(x) = 2 nu sqrt(gamma) * sum_j B_j * (-alpha (x - z_j)) G(x - z_j) dz.
// x must stay 6/sqrt(alpha) away from both grid edges.
double csl_velocity(const NoiseLattice& lattice, const GaussianKernelSpec& spec,
                    const CslParameters& params, double x);

// Same contraction applied to a fresh increment vector dB instead of the
// accumulated field; returns the velocity increment this step.
double csl_velocity_increment(const NoiseLattice& lattice, const Eigen::ArrayXd& dB,
                              const GaussianKernelSpec& spec, const CslParameters& params,
                              double x);

// Scalar reduction of the nonlocal term: centered Gaussian increment of
// variance 2 alpha lambda nu^2 dt, accumulated into a velocity V(t). Valid
// because tracer displacements are tiny compared with 1/sqrt(alpha).
double effective_velocity_increment(const CslParameters& params, double dt, RngStream& rng);

// Fractional (affine) noise: increments of variance t^(A-1) dt, with the
// power evaluated at the midpoint of the step.
struct FractionalNoiseSpec {
  double A = 1.0;
  void validate() const;
};
double fractional_increment(const FractionalNoiseSpec& spec, double t, double dt, RngStream& rng);
// Standard deviation of the increment; the deterministic part of the rule.
double fractional_increment_sd(const FractionalNoiseSpec& spec, double t, double dt);

}  // namespace cslturb

#endif
