#include "cslturb/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace cslturb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void GaussianKernelSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("kernel alpha must be > 0");
}

double kernel(const GaussianKernelSpec& spec, double x, double z) {
  const double d = x - z;
  return std::sqrt(spec.alpha / (2.0 * kPi)) * std::exp(-0.5 * spec.alpha * d * d);
}

double kernel_gradient(const GaussianKernelSpec& spec, double x, double z) {
  return -spec.alpha * (x - z) * kernel(spec, x, z);
}

NoiseLattice NoiseLattice::centered(double x0, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("NoiseLattice: alpha must be > 0");
  const double ell = 1.0 / std::sqrt(alpha);
  return make(x0 - 8.0 * ell, x0 + 8.0 * ell, ell / 8.0);
}

NoiseLattice NoiseLattice::make(double z_min, double z_max, double dz) {
  if (!(dz > 0.0) || !(z_max > z_min)) throw std::invalid_argument("NoiseLattice: bad window");
  NoiseLattice lat;
  lat.z_min = z_min;
  lat.z_max = z_max;
  lat.dz = dz;
  const int n = static_cast<int>(std::lround((z_max - z_min) / dz)) + 1;
  lat.sites = Eigen::ArrayXd::Zero(n);
  return lat;
}

Eigen::ArrayXd advance_field_collect(NoiseLattice& lattice, double dt, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance_field: dt must be > 0");
  const double sd = std::sqrt(dt / lattice.dz);
  Eigen::ArrayXd dB(lattice.sites.size());
  for (Eigen::Index j = 0; j < dB.size(); ++j) dB[j] = sd * rng.normal();
  lattice.sites += dB;
  lattice.t_accum += dt;
  return dB;
}

void advance_field(NoiseLattice& lattice, double dt, RngStream& rng) {
  (void)advance_field_collect(lattice, dt, rng);
}

namespace {

// sum_j field_j * (-alpha (x - z_j)) G(x - z_j) * dz, common to the velocity
// and its per-step increment.
double gradient_contraction(const NoiseLattice& lattice, const Eigen::ArrayXd& field,
                            const GaussianKernelSpec& spec, double x) {
  const double guard = 6.0 / std::sqrt(spec.alpha);
  if (x < lattice.z_min + guard || x > lattice.z_max - guard)
    throw std::domain_error("csl_velocity: x outside supported window");
  double acc = 0.0;
  for (int j = 0; j < lattice.n_sites(); ++j)
    acc += field[j] * kernel_gradient(spec, x, lattice.z_at(j));
  return acc * lattice.dz;
}

}  // namespace

double csl_velocity(const NoiseLattice& lattice, const GaussianKernelSpec& spec,
                    const CslParameters& params, double x) {
  const DerivedQuantities d = derive(params);
  return 2.0 * d.nu * std::sqrt(d.gamma) * gradient_contraction(lattice, lattice.sites, spec, x);
}

double csl_velocity_increment(const NoiseLattice& lattice, const Eigen::ArrayXd& dB,
                              const GaussianKernelSpec& spec, const CslParameters& params,
                              double x) {
  const DerivedQuantities d = derive(params);
  return 2.0 * d.nu * std::sqrt(d.gamma) * gradient_contraction(lattice, dB, spec, x);
}

double effective_velocity_increment(const CslParameters& params, double dt, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("effective_velocity_increment: dt must be > 0");
  const DerivedQuantities d = derive(params);
  const double rate = 2.0 * params.alpha * params.lambda * d.nu * d.nu;
  return std::sqrt(rate * dt) * rng.normal();
}

void FractionalNoiseSpec::validate() const {
  if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("fractional exponent A must be > 0");
}

double fractional_increment_sd(const FractionalNoiseSpec& spec, double t, double dt) {
  spec.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("fractional_increment: dt must be > 0");
  if (t < 0.0) throw std::invalid_argument("fractional_increment: t must be >= 0");
  const double t_mid = t + 0.5 * dt;
  return std::sqrt(std::pow(t_mid, spec.A - 1.0) * dt);
}

double fractional_increment(const FractionalNoiseSpec& spec, double t, double dt, RngStream& rng) {
  return fractional_increment_sd(spec, t, dt) * rng.normal();
}

}  // namespace cslturb
