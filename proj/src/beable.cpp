#include "cslturb/beable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cslturb/rng.hpp"

namespace cslturb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FreePacket::FreePacket(const InitialWavePacket& packet, const CslParameters& params) {
  packet.validate(params.hbar);
  params.validate();
  x_mean_ = packet.x_mean;
  p_mean_ = packet.p_mean;
  hbar_ = params.hbar;
  mass_ = params.mass;
  const double c = std::sqrt(packet.var_x * packet.var_p - 0.25 * hbar_ * hbar_);
  a0_ = 1.0 / (2.0 * packet.var_x);
  b0_ = -c / (hbar_ * packet.var_x);
}

void FreePacket::eval_width(double t, double& a, double& b) const {
  // 1/A(t) = 1/A(0) + i tau, tau = hbar t / M.
  const double tau = hbar_ * t / mass_;
  const double den = (1.0 - tau * b0_) * (1.0 - tau * b0_) + tau * tau * a0_ * a0_;
  a = a0_ / den;
  b = (b0_ * (1.0 - tau * b0_) - tau * a0_ * a0_) / den;
}

double FreePacket::center(double t) const { return x_mean_ + p_mean_ * t / mass_; }

double FreePacket::variance(double t) const {
  double a, b;
  eval_width(t, a, b);
  return 1.0 / (2.0 * a);
}

double FreePacket::prob_density(double x, double t) const {
  const double var = variance(t);
  const double d = x - center(t);
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
}

double FreePacket::amplitude(double x, double t) const { return std::sqrt(prob_density(x, t)); }

double FreePacket::phase(double x, double t) const {
  double a, b;
  eval_width(t, a, b);
  const double d = x - center(t);
  return -0.5 * hbar_ * b * d * d + p_mean_ * d;
}

double FreePacket::dlnR_dx(double x, double t) const {
  return -(x - center(t)) / (2.0 * variance(t));
}

double FreePacket::dS_dx(double x, double t) const {
  double a, b;
  eval_width(t, a, b);
  return -hbar_ * b * (x - center(t)) + p_mean_;
}

LatticeWave free_packet_wave(const InitialWavePacket& packet, const CslParameters& params,
                             double t, double x_left, double a, int n_sites) {
  if (!(a > 0.0) || n_sites < 4) throw std::invalid_argument("free_packet_wave: bad lattice");
  const FreePacket sol(packet, params);
  const double span = (n_sites - 1) * a;
  if (span < 8.0 * std::sqrt(sol.variance(t)))
    throw std::invalid_argument("free_packet_wave: lattice smaller than 8 standard deviations");

  LatticeWave wave;
  wave.a = a;
  wave.x_left = x_left;
  wave.t = t;
  wave.P.resize(n_sites);
  wave.S.resize(n_sites);
  for (int n = 0; n < n_sites; ++n) {
    const double x = wave.x_at(n);
    wave.P[n] = sol.prob_density(x, t);
    wave.S[n] = sol.phase(x, t);
  }
  wave.P /= wave.P.sum() * a;  // density convention: sum P a = 1 exactly
  wave.R = wave.P.sqrt();
  return wave;
}

Eigen::SparseMatrix<double> source_matrix(const LatticeWave& wave, const CslParameters& params,
                                          SourceStencil stencil) {
  params.validate();
  const int n = wave.n_sites();
  if (n < 2) throw std::invalid_argument("source_matrix: need at least 2 sites");
  const double ma = params.mass * wave.a;

  // Forward phase difference; the last site reuses the backward one (tails
  // carry no probability in any supported configuration).
  Eigen::ArrayXd sprime(n);
  for (int k = 0; k + 1 < n; ++k) sprime[k] = (wave.S[k + 1] - wave.S[k]) / wave.a;
  sprime[n - 1] = sprime[n - 2];

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * n);
  for (int k = 0; k + 1 < n; ++k) {
    double flow;  // J_{k+1,k}
    if (stencil == SourceStencil::bond_centered) {
      flow = sprime[k] * 0.5 * (wave.P[k] + wave.P[k + 1]) / ma;
    } else {
      flow = 0.5 * (sprime[k] * wave.P[k] + sprime[k + 1] * wave.P[k + 1]) / ma;
    }
    if (flow == 0.0) continue;
    trip.emplace_back(k + 1, k, flow);
    trip.emplace_back(k, k + 1, -flow);
  }
  Eigen::SparseMatrix<double> J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

Eigen::SparseMatrix<double> bell_transitions(const Eigen::SparseMatrix<double>& J,
                                             const Eigen::ArrayXd& P, double p_floor,
                                             std::vector<int>* dead_sites) {
  const int n = static_cast<int>(J.cols());
  if (P.size() != n) throw std::invalid_argument("bell_transitions: P size mismatch");
  if (dead_sites) dead_sites->clear();

  std::vector<bool> dead(n, false);
  for (int k = 0; k < n; ++k) {
    if (!(P[k] > p_floor)) {
      dead[k] = true;
      if (dead_sites) dead_sites->push_back(k);
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(J.nonZeros() / 2);
  for (int col = 0; col < n; ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(J, col); it; ++it) {
      if (it.value() <= 0.0) continue;
      const int row = static_cast<int>(it.row());
      if (dead[col] || dead[row]) continue;  // transitions from/to dead sites zeroed
      trip.emplace_back(row, col, it.value() / P[col]);
    }
  }
  Eigen::SparseMatrix<double> T(n, n);
  T.setFromTriplets(trip.begin(), trip.end());
  return T;
}

Eigen::SparseMatrix<double> homogeneous_transitions(const Eigen::ArrayXd& P, double sigma,
                                                    double rate_scale, double rel_floor) {
  if (!(sigma > 0.0)) throw std::invalid_argument("homogeneous_transitions: sigma must be > 0");
  if (!(rate_scale >= 0.0)) throw std::invalid_argument("homogeneous_transitions: rate_scale < 0");
  const int n = static_cast<int>(P.size());
  const int band = static_cast<int>(std::ceil(6.0 * std::sqrt(sigma)));
  const double p_max = P.maxCoeff();
  if (!(p_max > 0.0)) throw std::invalid_argument("homogeneous_transitions: P vanishes");
  const double floor = rel_floor * p_max;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (2 * band));
  for (int col = 0; col < n; ++col) {
    if (P[col] < 0.0 || std::isnan(P[col]))
      throw std::invalid_argument("homogeneous_transitions: non-positive P on band");
    if (!(P[col] > floor)) continue;
    for (int d = -band; d <= band; ++d) {
      if (d == 0) continue;
      const int row = col + d;
      if (row < 0 || row >= n) continue;
      if (!(P[row] > floor)) continue;
      const double lnr = std::log(P[row] / P[col]);
      const double arg = d - 2.0 * sigma * lnr / (4.0 * d);
      const double rate = rate_scale * std::exp(-arg * arg / (2.0 * sigma));
      if (rate > 0.0) trip.emplace_back(row, col, rate);
    }
  }
  Eigen::SparseMatrix<double> T(n, n);
  T.setFromTriplets(trip.begin(), trip.end());
  return T;
}

double homogeneous_second_moment(double a, double sigma, double rate_scale) {
  const int band = static_cast<int>(std::ceil(6.0 * std::sqrt(sigma)));
  double s = 0.0;
  for (int d = 1; d <= band; ++d)
    s += 2.0 * d * d * std::exp(-0.5 * d * d / sigma);
  return rate_scale * a * a * s;
}

double homogeneous_rate_for(double beta_sigma_a2, double a, double sigma) {
  const double unit = homogeneous_second_moment(a, sigma, 1.0);
  return beta_sigma_a2 / unit;
}

WalkerEnsemble init_walkers(const Eigen::ArrayXd& P, int n_walkers, std::uint64_t master_seed,
                            std::uint64_t stream_index) {
  if (n_walkers < 1) throw std::invalid_argument("init_walkers: need at least 1 walker");
  const int n = static_cast<int>(P.size());
  Eigen::ArrayXd cdf(n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    if (P[k] < 0.0) throw std::invalid_argument("init_walkers: negative P");
    acc += P[k];
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw std::invalid_argument("init_walkers: P vanishes");
  cdf /= acc;

  WalkerEnsemble w;
  w.rng_key = split_seed(master_seed, 0x77A1u ^ stream_index);
  w.site.resize(n_walkers);
  for (int i = 0; i < n_walkers; ++i) {
    const double u = counter_uniform(w.rng_key, static_cast<std::uint64_t>(i));
    const double* begin = cdf.data();
    const double* pos = std::upper_bound(begin, begin + n, u);
    w.site[i] = static_cast<int>(std::min<std::ptrdiff_t>(pos - begin, n - 1));
  }
  w.step_count = 1;  // counter 0 consumed by initialization
  return w;
}

void evolve_walkers(WalkerEnsemble& walkers, const Eigen::SparseMatrix<double>& T_total,
                    double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_walkers: dt must be > 0");
  const int n = static_cast<int>(T_total.cols());

  // Flatten per-site outgoing rates into cumulative jump probabilities.
  std::vector<int> offset(n + 1, 0);
  for (int col = 0; col < n; ++col)
    offset[col + 1] = offset[col] + static_cast<int>(T_total.col(col).nonZeros());
  std::vector<double> cumprob(offset[n]);
  std::vector<int> target(offset[n]);
  double max_total = 0.0;
  for (int col = 0; col < n; ++col) {
    double acc = 0.0;
    int k = offset[col];
    for (Eigen::SparseMatrix<double>::InnerIterator it(T_total, col); it; ++it, ++k) {
      acc += it.value() * dt;
      cumprob[k] = acc;
      target[k] = static_cast<int>(it.row());
    }
    max_total = std::max(max_total, acc);
  }
  if (max_total > 0.1)
    throw std::invalid_argument("evolve_walkers: dt * max total rate exceeds 0.1");

  const std::uint64_t base = walkers.step_count << 32;
  for (int i = 0; i < walkers.n_walkers(); ++i) {
    const int s = walkers.site[i];
    if (s < 0 || s >= n) throw std::invalid_argument("evolve_walkers: walker off lattice");
    const int lo = offset[s], hi = offset[s + 1];
    if (lo == hi) continue;
    const double total = cumprob[hi - 1];
    const double u = counter_uniform(walkers.rng_key, base + static_cast<std::uint64_t>(i));
    if (u >= total) continue;
    int k = lo;
    while (cumprob[k] <= u) ++k;
    walkers.site[i] = target[k];
  }
  ++walkers.step_count;
}

Eigen::ArrayXd transition_drift_field(const Eigen::SparseMatrix<double>& T_total, double a) {
  const int n = static_cast<int>(T_total.cols());
  Eigen::ArrayXd drift = Eigen::ArrayXd::Zero(n);
  for (int col = 0; col < n; ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(T_total, col); it; ++it)
      drift[col] += (static_cast<double>(it.row()) - col) * a * it.value();
  return drift;
}

Eigen::ArrayXd walker_histogram(const WalkerEnsemble& walkers, int n_sites) {
  Eigen::ArrayXd h = Eigen::ArrayXd::Zero(n_sites);
  for (int i = 0; i < walkers.n_walkers(); ++i) h[walkers.site[i]] += 1.0;
  return h;
}

double nelson_drift(const InitialWavePacket& packet, const CslParameters& params, double x,
                    double t, double beta_sigma_a2) {
  const FreePacket sol(packet, params);
  return beta_sigma_a2 * sol.dlnR_dx(x, t) + sol.dS_dx(x, t) / params.mass;
}

}  // namespace cslturb
