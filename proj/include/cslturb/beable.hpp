#ifndef CSLTURB_BEABLE_HPP
#define CSLTURB_BEABLE_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "cslturb/params.hpp"
#include "cslturb/tracer.hpp"

namespace cslturb {

// Analytic free evolution of the Gaussian packet psi = R exp(iS/hbar).
// The complex inverse width 1/A(t) = 1/A(0) + i hbar t / M gives
//   Var[x](t) = var_x + 2 c t / M + var_p t^2 / M^2,  c = sqrt(var_x var_p - hbar^2/4),
//   S(x,t)    = -hbar b(t) (x - x_c)^2 / 2 + p_mean (x - x_c)   (gauge S(x_c) = 0),
// with b(t) = Im A(t) and x_c(t) = x_mean + p_mean t / M.
class FreePacket {
 public:
  FreePacket(const InitialWavePacket& packet, const CslParameters& params);

  double center(double t) const;
  double variance(double t) const;
  double amplitude(double x, double t) const;       // R(x, t), normalized so int R^2 dx = 1
  double phase(double x, double t) const;           // S(x, t)
  double dlnR_dx(double x, double t) const;         // R'/R = -(x - x_c)/(2 Var)
  double dS_dx(double x, double t) const;
  double prob_density(double x, double t) const;    // R^2

 private:
  double a0_, b0_;  // A(0) = a0 + i b0
  double x_mean_, p_mean_, hbar_, mass_;
  void eval_width(double t, double& a, double& b) const;
};

// Wavefunction sampled on a uniform lattice x_n = x_left + n a, in polar
// form. P is a probability density at the sites: sum_n P_n a = 1.
struct LatticeWave {
  double a = 0;       // cm
  double x_left = 0;  // cm
  double t = 0;       // s
  Eigen::ArrayXd R, S, P;
  int n_sites() const { return static_cast<int>(P.size()); }
  double x_at(int n) const { return x_left + n * a; }
};

// Samples the analytic packet at time t on the given lattice and
// renormalizes so the density invariant holds exactly. Throws if the lattice
// covers fewer than 8 standard deviations of the packet.
LatticeWave free_packet_wave(const InitialWavePacket& packet, const CslParameters& params,
                             double t, double x_left, double a, int n_sites);

// Probability flow J from the discrete Schroedinger equation, built from the
// forward phase difference S'_n = (S_{n+1} - S_n)/a and antisymmetrized.
// Two completions are provided:
//   bond_centered (default): J_{n+1,n} = S'_n (P_n + P_{n+1}) / (2 M a),
//     second-order accurate in a (S'_n is exactly the bond-midpoint phase
//     gradient, and the averaged density is the bond-midpoint density);
//   site_averaged: J <- (J - J^T)/2 of the literal stencil, i.e.
//     J_{n+1,n} = (S'_n P_n + S'_{n+1} P_{n+1}) / (2 M a), which carries an
//     O(a) advection bias ~ (a/2M) d/dx(P S'').
// Both are antisymmetric to the last bit.
enum class SourceStencil { bond_centered, site_averaged };
Eigen::SparseMatrix<double> source_matrix(const LatticeWave& wave, const CslParameters& params,
                                          SourceStencil stencil = SourceStencil::bond_centered);

// Bell's minimal solution of J = T P - T^T P: T_mn = J_mn / P_n where
// J_mn > 0, else 0. Sites with P below the floor are treated as dead: no
// transitions from or to them; their indices are reported if requested.
Eigen::SparseMatrix<double> bell_transitions(const Eigen::SparseMatrix<double>& J,
                                             const Eigen::ArrayXd& P, double p_floor = 1e-300,
                                             std::vector<int>* dead_sites = nullptr);

// Homogeneous (zero-net-flow) augmentation
//   T0_mn = rate_scale exp{ -[ m-n - 2 sigma ln(P_m/P_n) / (4(m-n)) ]^2 / (2 sigma) },
// restricted to 0 < |m-n| <= ceil(6 sqrt(sigma)) and to sites above
// rel_floor * max(P). The expression satisfies T0_mn P_n = T0_nm P_m
// identically, so it adds diffusion without disturbing the tracked density.
Eigen::SparseMatrix<double> homogeneous_transitions(const Eigen::ArrayXd& P, double sigma,
                                                    double rate_scale, double rel_floor = 1e-12);

// Second moment sum_m (m-n)^2 a^2 T0_mn of a homogeneous row on flat P: the
// diffusion rate the augmentation adds in the continuum limit, i.e. the
// beta sigma a^2 of the Langevin picture.
double homogeneous_second_moment(double a, double sigma, double rate_scale);

// rate_scale such that homogeneous_second_moment == beta_sigma_a2.
double homogeneous_rate_for(double beta_sigma_a2, double a, double sigma);

// Walker population on the lattice. Jumps are driven by a counter-based
// uniform per (walker, step), so the update is reproducible and independent
// of evaluation order.
struct WalkerEnsemble {
  Eigen::ArrayXi site;
  std::uint64_t rng_key = 0;
  std::uint64_t step_count = 0;
  int n_walkers() const { return static_cast<int>(site.size()); }
};

WalkerEnsemble init_walkers(const Eigen::ArrayXd& P, int n_walkers, std::uint64_t master_seed,
                            std::uint64_t stream_index = 0);

// One first-order step of the master equation: a walker at site n jumps to m
// with probability T_mn dt. Requires dt * max_n sum_m T_mn <= 0.1.
void evolve_walkers(WalkerEnsemble& walkers, const Eigen::SparseMatrix<double>& T_total,
                    double dt);

// Per-site expected displacement rate sum_m (m-n) a T_mn: the drift field the
// jump process generates, for comparison against the Langevin drift.
Eigen::ArrayXd transition_drift_field(const Eigen::SparseMatrix<double>& T_total, double a);

Eigen::ArrayXd walker_histogram(const WalkerEnsemble& walkers, int n_sites);

// Langevin drift v = beta_sigma_a2 (R'/R) + S'/M evaluated from the analytic
// packet; with beta_sigma_a2 = 2 nu this is the continuum limit of the jump
// dynamics (and at t = 0 equals the tracer's deterministic drift).
double nelson_drift(const InitialWavePacket& packet, const CslParameters& params, double x,
                    double t, double beta_sigma_a2);

}  // namespace cslturb

#endif
