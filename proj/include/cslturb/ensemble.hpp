#ifndef CSLTURB_ENSEMBLE_HPP
#define CSLTURB_ENSEMBLE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "cslturb/params.hpp"
#include "cslturb/tracer.hpp"

namespace cslturb {

inline constexpr std::uint64_t kDefaultMasterSeed = 0xC510;

struct EnsembleConfig {
  int n_traj = 0;
  double dt = 0;       // s
  double t_final = 0;  // s
  int record_every = 1;
  std::uint64_t master_seed = kDefaultMasterSeed;
  IntegratorSpec integrator;
  std::optional<double> fractional_A;
  int n_sample_paths = 4;
  int n_workers = 0;  // 0: THREADS env var, else hardware

  void validate() const;
  int n_steps() const;
  int n_records() const;
};

// Ensemble moments over time with standard errors. Rows align with times.
// With a single trajectory the variance/covariance columns and all standard
// errors are NaN.
struct MomentSeries {
  Eigen::ArrayXd times;
  Eigen::ArrayXd mean_x, var_x, mean_p, var_p, cov_xp;
  Eigen::ArrayXd se_mean_x, se_var_x, se_mean_p, se_var_p, se_cov_xp;
  int n_traj = 0;
  Eigen::Index size() const { return times.size(); }
};

struct SamplePaths {
  Eigen::ArrayXd times;
  Eigen::MatrixXd x;  // one column per recorded path
};

struct EnsembleResult {
  MomentSeries moments;
  SamplePaths paths;
};

// Runs n_traj independent trajectories, each on its own RNG substream
// (master_seed, trajectory index). Trajectories may be computed on several
// workers; per-record values are stored per trajectory and reduced in fixed
// index order afterwards, so the output is bit-identical for any worker
// count. THREADS in the environment overrides the worker count.
EnsembleResult run_ensemble(const EnsembleConfig& config, const InitialWavePacket& packet,
                            const CslParameters& params);

int resolve_worker_count(int requested);

// <x^2>(t) = 2 nu t + (2/3) alpha lambda nu^2 t^3 (deterministic drift
// neglected, x measured from the packet center).
double msd_theory(double t, const CslParameters& params);

// t_enh = sqrt(3/(alpha lambda nu)): the root of 2 nu t = (2/3) alpha lambda
// nu^2 t^3, where enhanced diffusion overtakes the Brownian term.
double crossover_time(const CslParameters& params);

enum class MomentField { mean_x, var_x, mean_p, var_p, cov_xp };

struct PowerLawFit {
  double exponent = 0;
  double stderr_ = 0;
  int n_points = 0;
};

// Least-squares slope of log(value) vs log(t) over t in [t_lo, t_hi].
// Requires at least 5 record points in the window, all values positive.
PowerLawFit fit_scaling_exponent(MomentField field, const MomentSeries& series, double t_lo,
                                 double t_hi);

// Codimension mu = E - df; scaling exponent A = 1 + 3 mu / (4 - mu).
struct IntermittencySpec {
  int euclidean_dim = 0;
  double fractal_dim = 0;
  double mu() const { return euclidean_dim - fractal_dim; }
  void validate() const;  // 0 <= mu < 4
};
double intermittency_A(const IntermittencySpec& spec);

}  // namespace cslturb

#endif
