#ifndef CSLTURB_FPE_HPP
#define CSLTURB_FPE_HPP

#include <vector>

#include "cslturb/ensemble.hpp"
#include "cslturb/params.hpp"

namespace cslturb {

// First and second central moments of the phase-space density P(x, p, t).
struct MomentState {
  double mean_x = 0;  // cm
  double mean_p = 0;  // g cm / s
  double m_xx = 0;    // cm^2
  double m_xp = 0;    // cm g cm / s
  double m_pp = 0;    // (g cm / s)^2
  void validate() const;  // m_xx, m_pp >= 0; m_xp^2 <= m_xx m_pp
};

struct FpeOptions {
  // The kinetic drift is the full -(p/M) dP/dx coupling by default; only that
  // reproduces the cubic growth of m_xx. literal_eq25 switches to a constant
  // transport at the mean momentum, which decouples the second moments.
  bool literal_eq25 = false;
  // The cross diffusion sqrt(hbar^3 alpha lambda / 2M) is present only when
  // the position and momentum noises are the same process.
  bool shared_noise = true;
};

// Exact polynomial-in-t solution of the closed moment system
//   d<x>/dt = <p>/M,          d<p>/dt = 0,
//   dm_pp/dt = hbar^2 alpha lambda / 2,
//   dm_xp/dt = m_pp/M + sqrt(hbar^3 alpha lambda / 2M),
//   dm_xx/dt = 2 m_xp/M + hbar/M.
MomentState evolve_moments(const MomentState& initial, const CslParameters& params, double t,
                           const FpeOptions& options = {});

struct FpeComparison {
  struct Row {
    double t = 0;
    double z_mean_x = 0, z_mean_p = 0, z_var_x = 0, z_var_p = 0, z_cov_xp = 0;
  };
  std::vector<Row> rows;
  double max_abs_z = 0;
};

// Per-checkpoint z-scores (empirical - analytic)/stderr for every moment of a
// random-force ensemble against the analytic curves. t = 0 rows (zero
// stderr, exact agreement) report z = 0.
FpeComparison compare_to_ensemble(const MomentSeries& series, const CslParameters& params,
                                  const MomentState& initial, const FpeOptions& options = {});

}  // namespace cslturb

#endif
