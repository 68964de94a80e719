#pragma once

// Quantum-jump (Monte-Carlo wave-function) unravelling of the rotating-wave
// master equation, used as an independent sampler of the net transition
// count n(tau) = #emissions - #absorptions.
//
// Jump channels: emission sqrt(nbar + 1) sigma_- (count +1) and absorption
// sqrt(nbar) sigma_+ (count -1). Between jumps the unnormalised state evolves
// under H_eff = -(delta/2) sigma_z - Omega sigma_x - (i/2)[(nbar+1)|e><e| + nbar|g><g|],
// propagated exactly (2x2 matrix exponential). A jump fires when the squared
// norm drops below a uniform threshold drawn per segment; the crossing is
// detected on a grid of step dt_jump and then located by safeguarded Newton.
//
// Each trajectory draws from its own counter-based stream (seed, index), so
// the batch is bit-identical for any thread count.

#include <array>
#include <cstdint>
#include <vector>

#include "qtur/model.hpp"

namespace qtur {

struct TrajectoryBatch {
  std::vector<std::int64_t> counts;
  double tau = 0.0;
  std::uint64_t seed = 0;
  std::size_t n_traj = 0;
};

/// Sample moments of a batch, scaled per unit tau.
struct BatchSummary {
  double mean_current = 0.0;     ///< mean(n) / tau
  double mean_current_se = 0.0;  ///< standard error of mean_current
  double variance_rate = 0.0;    ///< unbiased var(n) / tau
  double variance_rate_se = 0.0; ///< standard error of variance_rate
};

BatchSummary summarize(const TrajectoryBatch& batch);

/// Detection step min(0.01, 0.1 / (2 nbar + 1 + 4 Omega)).
double jump_detection_step(const ModelParams& p);

/// Net count of trajectory `index`; every trajectory starts in a pure state
/// drawn from the eigen-decomposition of the analytic steady state.
std::int64_t simulate_net_count(const ModelParams& p, double tau, std::uint64_t seed, std::uint64_t index);

/// Requires tau >= 10 and n_traj >= 1. threads = 0 uses the OpenMP default.
TrajectoryBatch sample_jump_trajectories(const ModelParams& p, double tau, std::size_t n_traj, std::uint64_t seed,
                                         int threads = 0);

/// Single-threaded reference for sample_jump_trajectories().
TrajectoryBatch sample_jump_trajectories_serial(const ModelParams& p, double tau, std::size_t n_traj,
                                                std::uint64_t seed);

/// Ensemble mean of the excited population at `times` (ascending), for
/// trajectories started in the ground state, with standard errors.
struct PopulationEstimate {
  std::vector<double> mean;
  std::vector<double> se;
};

PopulationEstimate jump_ensemble_excited_population(const ModelParams& p, const std::vector<double>& times,
                                                    std::size_t n_traj, std::uint64_t seed, int threads = 0);

/// exp(s M) for a complex 2x2 matrix (row-major m00, m01, m10, m11).
std::array<Complex, 4> expm2(const std::array<Complex, 4>& m, double s);

}  // namespace qtur
