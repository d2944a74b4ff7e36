#include "cslturb/burgers.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cslturb {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Cvec = std::vector<std::complex<double>>;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

Cvec forward(const Eigen::ArrayXd& f) {
  std::vector<double> in(f.data(), f.data() + f.size());
  Cvec out;
  fft_engine().fwd(out, in);
  return out;
}

Eigen::ArrayXd inverse(const Cvec& F) {
  std::vector<double> out;
  fft_engine().inv(out, F);
  return Eigen::Map<const Eigen::ArrayXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

// Signed wavenumber 2 pi m / L for bin k of an n-point transform.
double wavenumber(int k, int n, double L) {
  const int m = (k <= n / 2) ? k : k - n;
  return 2.0 * kPi * m / L;
}

Cvec derivative_spectrum(Cvec F, int n, double L) {
  for (int k = 0; k < n; ++k) {
    if (k == n / 2) {
      F[k] = 0.0;  // Nyquist has no well-defined odd derivative
      continue;
    }
    F[k] *= std::complex<double>(0.0, wavenumber(k, n, L));
  }
  return F;
}

void dealias_two_thirds(Cvec& F, int n) {
  for (int k = 0; k < n; ++k) {
    const int m = (k <= n / 2) ? k : n - k;
    if (3 * m > n) F[k] = 0.0;
  }
}

}  // namespace

void Field1D::validate() const {
  if (!(L > 0.0)) throw std::invalid_argument("field: L must be > 0");
  if (n() < 8 || n() % 2 != 0) throw std::invalid_argument("field: n must be >= 8 and even");
  if (!values.isFinite().all()) throw std::invalid_argument("field: non-finite values");
}

Field1D make_field(double L, int n) {
  Field1D f;
  f.L = L;
  f.values = Eigen::ArrayXd::Zero(n);
  f.validate();
  return f;
}

void ForcingSpec::validate(double L) const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("forcing: epsilon must be >= 0");
  if (!(Delta > 0.0)) throw std::invalid_argument("forcing: Delta must be > 0");
  if (!(Delta < L / 4.0)) throw std::invalid_argument("forcing: Delta must be < L/4");
}

ForcingSampler::ForcingSampler(const ForcingSpec& spec, double L, int n) : L_(L), n_(n) {
  spec.validate(L);
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("forcing: n must be >= 8 and even");

  // Covariance at circular lag, then its eigenvalues via DFT.
  const double dx = L / n;
  Eigen::ArrayXd cov(n);
  for (int j = 0; j < n; ++j) {
    const double r = std::min(j, n - j) * dx;
    cov[j] = spec.epsilon * spec.Delta * spec.Delta *
             std::exp(-r * r / (2.0 * spec.Delta * spec.Delta));
  }
  const Cvec spec_c = forward(cov);
  lambda_.resize(n);
  double max_l = 0.0, min_l = 0.0;
  for (int k = 0; k < n; ++k) {
    lambda_[k] = spec_c[k].real();
    max_l = std::max(max_l, lambda_[k]);
    min_l = std::min(min_l, lambda_[k]);
  }
  if (min_l < -1e-8 * max_l)
    throw std::invalid_argument("forcing: covariance spectrum negative; grid too coarse");
  lambda_ = lambda_.max(0.0);
  amplitude_ = (lambda_ * static_cast<double>(n)).sqrt();
}

Field1D ForcingSampler::sample(double dt, RngStream& rng) const {
  if (!(dt > 0.0)) throw std::invalid_argument("forcing sample: dt must be > 0");
  Cvec F(n_);
  // Hermitian-symmetric complex Gaussian spectrum; k = 0 and Nyquist real.
  F[0] = amplitude_[0] * rng.normal();
  for (int k = 1; k < n_ / 2; ++k) {
    const double re = rng.normal() / std::sqrt(2.0);
    const double im = rng.normal() / std::sqrt(2.0);
    F[k] = amplitude_[k] * std::complex<double>(re, im);
    F[n_ - k] = std::conj(F[k]);
  }
  F[n_ / 2] = amplitude_[n_ / 2] * rng.normal();

  Field1D phi;
  phi.L = L_;
  phi.values = inverse(F) / std::sqrt(dt);
  return phi;
}

Field1D sample_potential(const ForcingSpec& spec, double L, int n, double dt, RngStream& rng) {
  return ForcingSampler(spec, L, n).sample(dt, rng);
}

Field1D spectral_derivative(const Field1D& f) {
  f.validate();
  Cvec F = forward(f.values);
  F = derivative_spectrum(std::move(F), f.n(), f.L);
  Field1D out;
  out.L = f.L;
  out.values = inverse(F);
  return out;
}

Field1D force_from_potential(const Field1D& phi, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("force sign must be +1 or -1");
  Field1D f = spectral_derivative(phi);
  if (sign < 0) f.values = -f.values;
  return f;
}

Field1D step_burgers(const Field1D& v, double nu, const Field1D& f, double dt) {
  v.validate();
  f.validate();
  if (!(nu > 0.0)) throw std::invalid_argument("step_burgers: nu must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("step_burgers: dt must be > 0");
  if (v.n() != f.n() || v.L != f.L) throw std::invalid_argument("step_burgers: grid mismatch");

  const double dx = v.dx();
  const double vmax = v.values.abs().maxCoeff();
  if (vmax * dt / dx > 0.5)
    throw std::invalid_argument("step_burgers: advective CFL violated, max|v| dt/dx = " +
                                std::to_string(vmax * dt / dx));
  if (nu * dt / (dx * dx) > 0.25)
    throw std::invalid_argument("step_burgers: diffusive bound violated, nu dt/dx^2 = " +
                                std::to_string(nu * dt / (dx * dx)));

  const int n = v.n();
  // Conservative advection term d/dx (v^2/2), dealiased.
  Cvec Fq = forward(0.5 * v.values.square());
  dealias_two_thirds(Fq, n);
  Fq = derivative_spectrum(std::move(Fq), n, v.L);
  const Eigen::ArrayXd adv = inverse(Fq);

  Cvec Fv = forward(v.values);
  for (int k = 0; k < n; ++k) {
    const double kk = wavenumber(k, n, v.L);
    Fv[k] *= -kk * kk;
  }
  const Eigen::ArrayXd visc = inverse(Fv);

  Field1D out;
  out.L = v.L;
  out.values = v.values + dt * (-adv + nu * visc + f.values);
  return out;
}

Field1D step_heat_multiplicative(const Field1D& Z, double nu, const Field1D& phi, double dt) {
  Z.validate();
  phi.validate();
  if (!(nu > 0.0)) throw std::invalid_argument("step_heat: nu must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("step_heat: dt must be > 0");
  if ((Z.values <= 0.0).any()) throw std::invalid_argument("step_heat: Z must be positive");
  const double dx = Z.dx();
  if (nu * dt / (dx * dx) > 0.25)
    throw std::invalid_argument("step_heat: diffusive bound violated");

  const int n = Z.n();
  Cvec Fz = forward(Z.values);
  for (int k = 0; k < n; ++k) {
    const double kk = wavenumber(k, n, Z.L);
    Fz[k] *= -kk * kk;
  }
  Field1D out;
  out.L = Z.L;
  out.values = (Z.values + dt * nu * inverse(Fz)) * (phi.values * dt / (2.0 * nu)).exp();
  if ((out.values <= 0.0).any())
    throw std::invalid_argument("step_heat: Z crossed zero (diffusion overshoot)");
  return out;
}

Field1D hopf_cole(const Field1D& Z, double nu) {
  Z.validate();
  if ((Z.values <= 0.0).any()) throw std::invalid_argument("hopf_cole: Z must be positive");
  Field1D dZ = spectral_derivative(Z);
  Field1D v;
  v.L = Z.L;
  v.values = -2.0 * nu * dZ.values / Z.values;
  return v;
}

Field1D surface_from(const Field1D& Z, double nu) {
  Z.validate();
  if ((Z.values <= 0.0).any()) throw std::invalid_argument("surface_from: Z must be positive");
  Field1D h;
  h.L = Z.L;
  h.values = 2.0 * nu * Z.values.log();
  h.values -= h.values.mean();
  return h;
}

}  // namespace cslturb
