#include "cslturb/tracer.hpp"

#include <cmath>
#include <stdexcept>

namespace cslturb {

void InitialWavePacket::validate(double hbar) const {
  if (!(var_x > 0.0)) throw std::invalid_argument("packet var_x must be > 0");
  if (!(var_p > 0.0)) throw std::invalid_argument("packet var_p must be > 0");
  if (var_x * var_p < 0.25 * hbar * hbar)
    throw std::invalid_argument("packet violates var_x * var_p >= hbar^2/4");
}

void IntegratorSpec::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("integrator dt must be > 0");
  const bool exact = scheme == Scheme::exact_gaussian || scheme == Scheme::fox_colored;
  if (exact && mode != NoiseMode::effective)
    throw std::invalid_argument("exact_gaussian requires effective mode");
  if (momentum_model == MomentumModel::full && mode != NoiseMode::field)
    throw std::invalid_argument("full momentum model requires field mode");
}

TracerState TracerState::from_packet(const InitialWavePacket& packet) {
  TracerState s;
  s.x = packet.x_mean;
  s.p = packet.p_mean;
  return s;
}

double deterministic_drift(const InitialWavePacket& packet, const CslParameters& params,
                           double x) {
  packet.validate(params.hbar);
  const double nu = params.hbar / (2.0 * params.mass);
  const double c = std::sqrt(packet.var_x * packet.var_p - 0.25 * params.hbar * params.hbar);
  return (packet.x_mean - x) * (nu / packet.var_x - c / (params.mass * packet.var_x)) +
         packet.p_mean / params.mass;
}

double momentum_noise_scale(const CslParameters& params) {
  return params.hbar * std::sqrt(0.5 * params.alpha * params.lambda);
}

void step_momentum_full(TracerState& state, const NoiseLattice& lattice, const Eigen::ArrayXd& dB,
                        const GaussianKernelSpec& spec, const CslParameters& params) {
  const double dv = csl_velocity_increment(lattice, dB, spec, params, state.x);
  state.p += params.mass * dv;
  state.V += dv;
}

void step_momentum_random_force(TracerState& state, const CslParameters& params, double dt,
                                double xi) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_momentum_random_force: dt must be > 0");
  const double dp = momentum_noise_scale(params) * std::sqrt(dt) * xi;
  state.p += dp;
  state.V += dp / params.mass;
}

namespace {

double drift_term(const TracerState& state, const InitialWavePacket& packet,
                  const CslParameters& params, const IntegratorSpec& spec) {
  return spec.drift_free ? 0.0 : deterministic_drift(packet, params, state.x);
}

void step_effective_euler(TracerState& state, const InitialWavePacket& packet,
                          const CslParameters& params, const IntegratorSpec& spec,
                          RngStream& rng) {
  const double h = spec.dt;
  const double nu = params.hbar / (2.0 * params.mass);
  const double xi_p = rng.normal();
  const double xi_x = spec.shared_noise ? xi_p : rng.normal();
  const double v0 = state.V;
  state.x += (drift_term(state, packet, params, spec) + v0) * h + std::sqrt(2.0 * nu * h) * xi_x;
  step_momentum_random_force(state, params, h, xi_p);
  state.t += h;
}

// Exact transition of the linear pair dp = s_p dW2, dx = (D_S + V) dt
// + sqrt(2 nu) dW1 over one step: W2(h) and its time integral are jointly
// Gaussian with Var[W2(h)] = h, Var[int W2] = h^3/3, Cov = h^2/2.
void step_effective_exact(TracerState& state, const InitialWavePacket& packet,
                          const CslParameters& params, const IntegratorSpec& spec,
                          RngStream& rng) {
  const double h = spec.dt;
  const double nu = params.hbar / (2.0 * params.mass);
  const double sv = momentum_noise_scale(params) / params.mass;  // velocity noise scale
  const double xi_a = rng.normal();
  const double xi_b = rng.normal();
  const double xi_x = spec.shared_noise ? xi_a : rng.normal();
  const double w_end = std::sqrt(h) * xi_a;
  const double w_int = 0.5 * h * w_end + std::sqrt(h * h * h / 12.0) * xi_b;
  const double v0 = state.V;
  state.x += (drift_term(state, packet, params, spec) + v0) * h + sv * w_int +
             std::sqrt(2.0 * nu * h) * xi_x;
  const double dv = sv * w_end;
  state.V += dv;
  state.p += params.mass * dv;
  state.t += h;
}

void step_field(TracerState& state, const InitialWavePacket& packet, const CslParameters& params,
                const IntegratorSpec& spec, RngStream& rng) {
  if (state.lattice == nullptr) throw std::invalid_argument("field mode needs a lattice handle");
  NoiseLattice& lat = *state.lattice;
  const GaussianKernelSpec kspec{params.alpha};
  const double h = spec.dt;
  const double nu = params.hbar / (2.0 * params.mass);

  // Frozen-field locality: the kernel is evaluated at the current position,
  // legitimate only while displacements stay far below the kernel scale.
  const double ell = 1.0 / std::sqrt(params.alpha);
  if (std::abs(state.x - lat.center()) > 0.1 * ell)
    throw std::runtime_error("tracer displacement exceeded 0.1/sqrt(alpha); "
                             "frozen-field assumption violated");

  const double v_csl = csl_velocity(lat, kspec, params, state.x);
  const Eigen::ArrayXd dB = advance_field_collect(lat, h, rng);
  const double xi_x = rng.normal();
  state.x += (drift_term(state, packet, params, spec) + v_csl) * h + std::sqrt(2.0 * nu * h) * xi_x;
  if (spec.momentum_model == MomentumModel::full) {
    step_momentum_full(state, lat, dB, kspec, params);
  } else {
    step_momentum_random_force(state, params, h, rng.normal());
  }
  state.t += h;
}

}  // namespace

void step(TracerState& state, const InitialWavePacket& packet, const CslParameters& params,
          const IntegratorSpec& spec, RngStream& rng) {
  spec.validate();
  params.validate();
  if (!spec.drift_free) packet.validate(params.hbar);
  if (spec.mode == NoiseMode::field) {
    step_field(state, packet, params, spec, rng);
  } else if (spec.scheme == Scheme::euler_maruyama) {
    step_effective_euler(state, packet, params, spec, rng);
  } else {
    step_effective_exact(state, packet, params, spec, rng);
  }
}

void step_fractional(TracerState& state, const InitialWavePacket& packet,
                     const CslParameters& params, const IntegratorSpec& spec,
                     const FractionalNoiseSpec& fspec, RngStream& rng) {
  spec.validate();
  fspec.validate();
  if (spec.mode != NoiseMode::effective || spec.scheme != Scheme::euler_maruyama)
    throw std::invalid_argument("step_fractional: effective mode, euler_maruyama scheme only");
  const double h = spec.dt;
  const double nu = params.hbar / (2.0 * params.mass);
  // Same draw order as the white-noise euler step; only the increment
  // standard deviation changes, so A = 1 is draw-for-draw identical.
  const double fsd = fractional_increment_sd(fspec, state.t, h);
  const double xi_p = rng.normal();
  const double xi_x = spec.shared_noise ? xi_p : rng.normal();
  const double v0 = state.V;
  state.x += (drift_term(state, packet, params, spec) + v0) * h + std::sqrt(2.0 * nu) * fsd * xi_x;
  const double dp = momentum_noise_scale(params) * fsd * xi_p;
  state.p += dp;
  state.V += dp / params.mass;
  state.t += h;
}

}  // namespace cslturb
