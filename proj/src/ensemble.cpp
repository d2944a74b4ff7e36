#include "cslturb/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cslturb/stats.hpp"

namespace cslturb {

void EnsembleConfig::validate() const {
  if (n_traj < 1) throw std::invalid_argument("ensemble n_traj must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("ensemble dt must be > 0");
  if (!(t_final >= dt)) throw std::invalid_argument("ensemble t_final must be >= dt");
  if (record_every < 1) throw std::invalid_argument("ensemble record_every must be >= 1");
  if (n_sample_paths < 0) throw std::invalid_argument("n_sample_paths must be >= 0");
  IntegratorSpec s = integrator;
  s.dt = dt;
  s.validate();
  if (fractional_A) FractionalNoiseSpec{*fractional_A}.validate();
}

int EnsembleConfig::n_steps() const {
  return static_cast<int>(std::llround(t_final / dt));
}

int EnsembleConfig::n_records() const {
  return n_steps() / record_every + 1;  // includes t = 0
}

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// One trajectory, writing x and p into its column at every record point.
void run_one(const EnsembleConfig& config, const InitialWavePacket& packet,
             const CslParameters& params, std::uint64_t traj_index, double* x_col, double* p_col) {
  RngStream rng(config.master_seed, traj_index);
  IntegratorSpec spec = config.integrator;
  spec.dt = config.dt;
  TracerState state = TracerState::from_packet(packet);

  NoiseLattice lattice;
  if (spec.mode == NoiseMode::field) {
    lattice = NoiseLattice::centered(packet.x_mean, params.alpha);
    state.lattice = &lattice;
  }

  const int n_steps = config.n_steps();
  int rec = 0;
  x_col[rec] = state.x;
  p_col[rec] = state.p;
  ++rec;
  const FractionalNoiseSpec fspec{config.fractional_A.value_or(1.0)};
  for (int k = 1; k <= n_steps; ++k) {
    if (config.fractional_A) {
      step_fractional(state, packet, params, spec, fspec, rng);
    } else {
      step(state, packet, params, spec, rng);
    }
    if (k % config.record_every == 0) {
      x_col[rec] = state.x;
      p_col[rec] = state.p;
      ++rec;
    }
  }
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& config, const InitialWavePacket& packet,
                            const CslParameters& params) {
  config.validate();
  params.validate();
  if (!config.integrator.drift_free) packet.validate(params.hbar);

  const int n = config.n_traj;
  const int n_rec = config.n_records();

  // Per-trajectory record storage; workers fill disjoint column blocks, the
  // reduction below walks trajectories in index order regardless of how many
  // workers produced them.
  Eigen::MatrixXd xs(n_rec, n), ps(n_rec, n);

  const int workers = std::min(resolve_worker_count(config.n_workers), n);
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  auto run_block = [&](int begin, int end) {
    try {
      for (int j = begin; j < end; ++j)
        run_one(config, packet, params, static_cast<std::uint64_t>(j), xs.col(j).data(),
                ps.col(j).data());
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers <= 1) {
    run_block(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_block, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  EnsembleResult result;
  MomentSeries& m = result.moments;
  m.n_traj = n;
  m.times.resize(n_rec);
  for (int r = 0; r < n_rec; ++r) m.times[r] = static_cast<double>(r) * config.record_every * config.dt;
  m.mean_x.resize(n_rec);
  m.var_x.resize(n_rec);
  m.mean_p.resize(n_rec);
  m.var_p.resize(n_rec);
  m.cov_xp.resize(n_rec);
  m.se_mean_x.resize(n_rec);
  m.se_var_x.resize(n_rec);
  m.se_mean_p.resize(n_rec);
  m.se_var_p.resize(n_rec);
  m.se_cov_xp.resize(n_rec);

  std::vector<double> xrow(n), prow(n);
  for (int r = 0; r < n_rec; ++r) {
    for (int j = 0; j < n; ++j) {
      xrow[j] = xs(r, j);
      prow[j] = ps(r, j);
    }
    const BivariateMoments bm = bivariate_moments(xrow, prow);
    m.mean_x[r] = bm.mean_x;
    m.var_x[r] = bm.var_x;
    m.mean_p[r] = bm.mean_y;
    m.var_p[r] = bm.var_y;
    m.cov_xp[r] = bm.cov;
    m.se_mean_x[r] = bm.se_mean_x;
    m.se_var_x[r] = bm.se_var_x;
    m.se_mean_p[r] = bm.se_mean_y;
    m.se_var_p[r] = bm.se_var_y;
    m.se_cov_xp[r] = bm.se_cov;
  }

  const int k = std::min(config.n_sample_paths, n);
  result.paths.times = m.times;
  result.paths.x = xs.leftCols(k);
  return result;
}

double msd_theory(double t, const CslParameters& params) {
  if (t < 0.0) throw std::invalid_argument("msd_theory: t must be >= 0");
  const DerivedQuantities d = derive(params);
  return 2.0 * d.nu * t + (2.0 / 3.0) * params.alpha * params.lambda * d.nu * d.nu * t * t * t;
}

double crossover_time(const CslParameters& params) {
  return derive(params).t_enh;
}

namespace {

const Eigen::ArrayXd& select_field(MomentField field, const MomentSeries& series) {
  switch (field) {
    case MomentField::mean_x: return series.mean_x;
    case MomentField::var_x: return series.var_x;
    case MomentField::mean_p: return series.mean_p;
    case MomentField::var_p: return series.var_p;
    case MomentField::cov_xp: return series.cov_xp;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PowerLawFit fit_scaling_exponent(MomentField field, const MomentSeries& series, double t_lo,
                                 double t_hi) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("fit window: t_lo < t_hi required");
  const Eigen::ArrayXd& values = select_field(field, series);
  std::vector<double> lx, ly;
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    const double t = series.times[i];
    if (t < t_lo || t > t_hi) continue;
    const double v = values[i];
    if (!(v > 0.0))
      throw std::invalid_argument("fit window contains non-positive values");
    lx.push_back(std::log(t));
    ly.push_back(std::log(v));
  }
  if (lx.size() < 5) throw std::invalid_argument("fit window has fewer than 5 record points");
  const LineFit f = fit_line(lx, ly);
  return PowerLawFit{f.slope, f.slope_stderr, static_cast<int>(f.n)};
}

void IntermittencySpec::validate() const {
  const double m = mu();
  if (!(m >= 0.0) || !(m < 4.0))
    throw std::invalid_argument("intermittency spec needs 0 <= mu = E - df < 4");
}

double intermittency_A(const IntermittencySpec& spec) {
  spec.validate();
  const double m = spec.mu();
  return 1.0 + 3.0 * m / (4.0 - m);
}

}  // namespace cslturb
