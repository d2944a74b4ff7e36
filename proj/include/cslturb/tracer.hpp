#ifndef CSLTURB_TRACER_HPP
#define CSLTURB_TRACER_HPP

#include "cslturb/noise.hpp"
#include "cslturb/params.hpp"
#include "cslturb/rng.hpp"

namespace cslturb {

// Gaussian packet defining the deterministic drift. var_x and var_p are
// variances (not standard deviations); var_x * var_p >= hbar^2/4 keeps the
// phase chirp real.
struct InitialWavePacket {
  double x_mean = 0;   // cm
  double p_mean = 0;   // g cm / s
  double var_x = 0;    // cm^2
  double var_p = 0;    // (g cm / s)^2
  void validate(double hbar) const;
};

enum class Scheme { euler_maruyama, exact_gaussian, fox_colored };
enum class NoiseMode { field, effective };
enum class MomentumModel { full, random_force };

// fox_colored is the exact Gaussian update of the linear (x, p) system;
// for Brownian-correlated velocity the colored-noise integrator reduces to
// exactly that, so the two names share one implementation.
struct IntegratorSpec {
  Scheme scheme = Scheme::exact_gaussian;
  double dt = 0;  // s
  NoiseMode mode = NoiseMode::effective;
  MomentumModel momentum_model = MomentumModel::random_force;
  bool shared_noise = true;  // x-channel Wiener term reused by the momentum kick
  bool drift_free = false;   // zero the deterministic packet drift D_S
  void validate() const;
};

// Phase-space state of one tracer. V is the accumulated collapse velocity;
// in effective mode it equals (p - p(0))/M by construction since momentum is
// the mass-weighted integral of the same noise. In field mode the nonlocal
// velocity is read from the attached lattice instead.
struct TracerState {
  double x = 0;  // cm
  double p = 0;  // g cm / s
  double t = 0;  // s
  double V = 0;  // cm / s
  NoiseLattice* lattice = nullptr;  // non-owning, field mode only

  static TracerState from_packet(const InitialWavePacket& packet);
};

// D_S = (<x> - x) [nu/var_x - sqrt(var_x var_p - hbar^2/4)/(M var_x)] + <p>/M
double deterministic_drift(const InitialWavePacket& packet, const CslParameters& params, double x);

// Momentum noise amplitude hbar sqrt(alpha lambda / 2).
double momentum_noise_scale(const CslParameters& params);

// Advance one step of the position/momentum system. Effective mode:
//   dx = [D_S + V] dt + sqrt(2 nu) dW1,   dp = hbar sqrt(alpha lambda/2) dW2,
//   dV = dp / M, with dW2 = dW1 when shared_noise is on.
// exact_gaussian samples the joint Gaussian transition of (x, p) over dt with
// D_S frozen at the step start; euler_maruyama freezes V too. Field mode
// (euler only) evaluates the nonlocal velocity on the lattice at the current
// position, advances the field, and feeds the same increments to momentum.
void step(TracerState& state, const InitialWavePacket& packet, const CslParameters& params,
          const IntegratorSpec& spec, RngStream& rng);

// dp = 2 M nu sqrt(gamma) sum_j dB_j (-alpha (x - z_j)) G(x - z_j) dz, using
// the same fresh increments dB already applied to the lattice this step.
void step_momentum_full(TracerState& state, const NoiseLattice& lattice, const Eigen::ArrayXd& dB,
                        const GaussianKernelSpec& spec, const CslParameters& params);

// dp = hbar sqrt(alpha lambda / 2) sqrt(dt) xi; the caller supplies xi so the
// x-channel deviate can be shared (the default wiring in step()).
void step_momentum_random_force(TracerState& state, const CslParameters& params, double dt,
                                double xi);

// Same structure as step() (effective mode, euler scheme) with every
// white-noise increment replaced by a fractional one of variance t^(A-1) dt.
// A = 1 reproduces step() exactly, draw for draw.
void step_fractional(TracerState& state, const InitialWavePacket& packet,
                     const CslParameters& params, const IntegratorSpec& spec,
                     const FractionalNoiseSpec& fspec, RngStream& rng);

}  // namespace cslturb

#endif
